// Copyright 2026 The fedkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fedkit/net/simnet.hpp"

#include <algorithm>
#include <condition_variable>
#include <deque>
#include <mutex>
#include <thread>

#include "fedkit/common/error.hpp"
#include "fedkit/common/rng.hpp"

namespace fedkit::net {

namespace {
enum class PartyState { kNotStarted, kRunning, kBlocked, kDone };
enum class WakeReason { kNone, kMessage, kTimeout, kPoison };
constexpr size_t kScheduler = SIZE_MAX;
}  // namespace

struct SimNet::Impl {
  struct Party {
    PartyId id;
    PartyProgram program;
    PartyState state = PartyState::kNotStarted;
    PartyId waiting_from;
    bool finite_timeout = false;
    WakeReason wake = WakeReason::kNone;
    std::string error;
    std::map<PartyId, std::deque<Envelope>> inbox;
    std::thread thread;
  };

  std::string job_id;
  uint64_t seed;
  std::mutex mu;
  std::condition_variable cv;
  size_t active = kScheduler;
  std::vector<std::unique_ptr<Party>> parties;
  AuditLog audit;
  uint64_t clock = 0;
  bool started = false;

  Party* find(const PartyId& id) {
    for (auto& p : parties) {
      if (p->id == id) return p.get();
    }
    return nullptr;
  }

  // Party-side: hand the baton back to the scheduler and wait to be resumed.
  void yield_to_scheduler(std::unique_lock<std::mutex>& lock, size_t me) {
    active = kScheduler;
    cv.notify_all();
    cv.wait(lock, [&] { return active == me; });
  }
};

SimNet::SimNet(std::string job_id, uint64_t seed) : impl_(std::make_unique<Impl>()) {
  impl_->job_id = std::move(job_id);
  impl_->seed = seed;
}

SimNet::~SimNet() {
  // run() joins all threads; an unrun net has none.
}

void SimNet::add_party(PartyId id, PartyProgram program) {
  if (impl_->started) throw Error("simnet: add_party after run");
  if (impl_->find(id) != nullptr) throw Error("simnet: duplicate party " + id);
  auto party = std::make_unique<Impl::Party>();
  party->id = std::move(id);
  party->program = std::move(program);
  impl_->parties.push_back(std::move(party));
}

SimResult SimNet::run() {
  auto& im = *impl_;
  if (im.started) throw Error("simnet: run called twice");
  im.started = true;
  std::sort(im.parties.begin(), im.parties.end(),
            [](const auto& a, const auto& b) { return a->id < b->id; });

  Rng sched_rng(derive_seed(im.seed, "simnet-scheduler"));
  SimResult result;

  for (size_t i = 0; i < im.parties.size(); ++i) {
    Impl::Party* p = im.parties[i].get();
    p->thread = std::thread([this, i, p] {
      auto& net = *impl_;
      {
        std::unique_lock lock(net.mu);
        net.cv.wait(lock, [&] { return net.active == i; });
        p->state = PartyState::kRunning;
      }
      try {
        SimContext ctx(impl_.get(), i);
        p->program(ctx);
      } catch (const std::exception& e) {
        p->error = e.what();
      } catch (...) {
        p->error = "unknown exception";
      }
      std::unique_lock lock(net.mu);
      p->state = PartyState::kDone;
      net.active = kScheduler;
      net.cv.notify_all();
    });
  }

  {
    std::unique_lock lock(im.mu);
    bool deadlock_reported = false;
    while (true) {
      bool all_done = std::all_of(im.parties.begin(), im.parties.end(), [](const auto& p) {
        return p->state == PartyState::kDone;
      });
      if (all_done) break;

      auto runnable = [&](const Impl::Party& p) {
        if (p.state == PartyState::kNotStarted) return true;
        if (p.state != PartyState::kBlocked) return false;
        auto it = p.inbox.find(p.waiting_from);
        return it != p.inbox.end() && !it->second.empty();
      };

      std::vector<size_t> candidates;
      for (size_t i = 0; i < im.parties.size(); ++i) {
        if (runnable(*im.parties[i])) candidates.push_back(i);
      }
      WakeReason reason = WakeReason::kMessage;
      if (candidates.empty()) {
        // Nothing can progress: fire a finite timeout if one is pending,
        // otherwise report deadlock and unwind the blocked parties.
        for (size_t i = 0; i < im.parties.size(); ++i) {
          const auto& p = *im.parties[i];
          if (p.state == PartyState::kBlocked && p.finite_timeout) candidates.push_back(i);
        }
        reason = WakeReason::kTimeout;
        if (candidates.empty()) {
          if (!deadlock_reported) {
            deadlock_reported = true;
            result.deadlock = true;
            for (const auto& p : im.parties) {
              if (p->state == PartyState::kBlocked) result.blocked_parties.push_back(p->id);
            }
          }
          for (size_t i = 0; i < im.parties.size(); ++i) {
            if (im.parties[i]->state == PartyState::kBlocked) candidates.push_back(i);
          }
          reason = WakeReason::kPoison;
        }
      }

      size_t pick = candidates[sched_rng.below(candidates.size())];
      Impl::Party* p = im.parties[pick].get();
      if (p->state == PartyState::kBlocked) p->wake = reason;
      im.active = pick;
      im.cv.notify_all();
      im.cv.wait(lock, [&] { return im.active == kScheduler; });
    }
  }

  for (auto& p : im.parties) {
    if (p->thread.joinable()) p->thread.join();
    if (!p->error.empty()) result.party_errors[p->id] = p->error;
  }
  result.transcript = im.audit;
  return result;
}

SimContext::SimContext(SimNet::Impl* impl, size_t party_index)
    : impl_(impl), party_index_(party_index) {}

const PartyId& SimContext::self() const { return impl_->parties[party_index_]->id; }

const std::string& SimContext::job_id() const { return impl_->job_id; }

std::vector<PartyId> SimContext::roster() const {
  std::vector<PartyId> out;
  out.reserve(impl_->parties.size());
  for (const auto& p : impl_->parties) out.push_back(p->id);
  return out;
}

uint64_t SimContext::party_seed() const {
  return derive_seed(impl_->seed, "party:" + self());
}

void SimContext::send(const PartyId& to, MsgType type, uint32_t round, Bytes payload) {
  if (payload.size() > kMaxFrameBytes) {
    throw ProtocolError("send: payload exceeds max frame size");
  }
  std::unique_lock lock(impl_->mu);
  auto* recipient = impl_->find(to);
  if (recipient == nullptr) throw ProtocolError("send: unknown party " + to);
  Envelope env = make_envelope(impl_->job_id, round, self(), to, type, std::move(payload));
  impl_->audit.append(env, ++impl_->clock);
  recipient->inbox[self()].push_back(std::move(env));
}

Envelope SimContext::recv(const PartyId& from) { return recv_impl(from, false); }

Envelope SimContext::recv(const PartyId& from, uint64_t) { return recv_impl(from, true); }

Envelope SimContext::recv_impl(const PartyId& from, bool finite_timeout) {
  auto& im = *impl_;
  auto* me = im.parties[party_index_].get();
  std::unique_lock lock(im.mu);
  auto& queue = me->inbox[from];
  if (queue.empty()) {
    me->state = PartyState::kBlocked;
    me->waiting_from = from;
    me->finite_timeout = finite_timeout;
    me->wake = WakeReason::kNone;
    im.yield_to_scheduler(lock, party_index_);
    me->state = PartyState::kRunning;
    if (me->wake == WakeReason::kTimeout) {
      throw TimeoutError("recv: timed out waiting for " + from);
    }
    if (me->wake == WakeReason::kPoison) {
      throw DeadlockError("recv: deadlock while waiting for " + from);
    }
  }
  Envelope env = std::move(queue.front());
  queue.pop_front();
  return env;
}

}  // namespace fedkit::net
