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

#include "fedkit/align/psi.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "fedkit/common/error.hpp"
#include "fedkit/common/wire.hpp"

namespace fedkit::align {

using crypto::BlindingGroup;
using crypto::BlindingKey;

namespace {

std::vector<mpz_class> blind_own_ids(std::span<const std::string> ids, const BlindingKey& key,
                                     const BlindingGroup& group) {
  std::vector<mpz_class> out;
  out.reserve(ids.size());
  for (const auto& id : ids) {
    out.push_back(crypto::blind(crypto::hash_to_group(as_bytes(id), group), key, group));
  }
  return out;
}

std::vector<mpz_class> blind_elements(std::span<const mpz_class> elements, const BlindingKey& key,
                                      const BlindingGroup& group) {
  std::vector<mpz_class> out;
  out.reserve(elements.size());
  for (const auto& e : elements) out.push_back(crypto::blind(e, key, group));
  return out;
}

// Matched local row indices: positions whose double-blinded value appears in
// the peer's double-blinded set, ordered by ascending id.
std::vector<size_t> match_rows(std::span<const std::string> ids,
                               const std::vector<mpz_class>& own_doubles,
                               const std::vector<mpz_class>& peer_doubles) {
  std::set<mpz_class> peer_set(peer_doubles.begin(), peer_doubles.end());
  std::vector<size_t> rows;
  for (size_t i = 0; i < own_doubles.size(); ++i) {
    if (peer_set.contains(own_doubles[i])) rows.push_back(i);
  }
  std::sort(rows.begin(), rows.end(),
            [&](size_t a, size_t b) { return ids[a] < ids[b]; });
  return rows;
}

Bytes encode_element_list(const std::vector<mpz_class>& elements, const BlindingGroup& group) {
  wire::Writer w;
  w.u32(static_cast<uint32_t>(elements.size()));
  w.u16(static_cast<uint16_t>(group.element_bytes()));
  for (const auto& e : elements) w.raw(crypto::encode_element(e, group));
  return w.take();
}

std::vector<mpz_class> decode_element_list(std::span<const uint8_t> payload,
                                           const BlindingGroup& group) {
  wire::Reader r(payload);
  uint32_t count = r.u32();
  uint16_t width = r.u16();
  if (width != group.element_bytes()) throw DecodeError("psi: element width mismatch");
  std::vector<mpz_class> out;
  out.reserve(count);
  for (uint32_t i = 0; i < count; ++i) {
    out.push_back(crypto::decode_element(r.raw(width), group));
  }
  r.expect_end();
  return out;
}

std::vector<size_t> rows_for_ids(std::span<const std::string> ids,
                                 const std::vector<std::string>& wanted) {
  std::map<std::string, size_t> index;
  for (size_t i = 0; i < ids.size(); ++i) index[ids[i]] = i;
  std::vector<size_t> rows;
  rows.reserve(wanted.size());
  for (const auto& id : wanted) {
    auto it = index.find(id);
    if (it == index.end()) throw ProtocolError("psi: final set names an unknown id");
    rows.push_back(it->second);
  }
  return rows;
}

void check_unique(std::span<const std::string> ids) {
  std::set<std::string> seen(ids.begin(), ids.end());
  if (seen.size() != ids.size()) throw IntegrityError("psi: duplicate ids in input list");
}

}  // namespace

Digest32 digest_id_list(std::span<const std::string> ids) {
  wire::Writer w;
  w.u32(static_cast<uint32_t>(ids.size()));
  for (const auto& id : ids) w.str(id);
  return sha256(w.bytes());
}

AlignmentResult psi_two_party(std::span<const std::string> initiator_ids,
                              std::span<const std::string> responder_ids,
                              const BlindingGroup& group, Rng& initiator_rng,
                              Rng& responder_rng) {
  check_unique(initiator_ids);
  check_unique(responder_ids);
  BlindingKey ka = crypto::random_blinding_key(group, initiator_rng);
  BlindingKey kb = crypto::random_blinding_key(group, responder_rng);

  std::vector<mpz_class> singles_a = blind_own_ids(initiator_ids, ka, group);
  std::vector<mpz_class> singles_b = blind_own_ids(responder_ids, kb, group);
  std::vector<mpz_class> doubles_a = blind_elements(singles_a, kb, group);  // H(a)^{ka kb}
  std::vector<mpz_class> doubles_b = blind_elements(singles_b, ka, group);

  AlignmentResult result;
  result.rows_per_party.push_back(match_rows(initiator_ids, doubles_a, doubles_b));
  result.rows_per_party.push_back(match_rows(responder_ids, doubles_b, doubles_a));
  result.intersection_size = result.rows_per_party[0].size();
  result.id_list_digests = {digest_id_list(initiator_ids), digest_id_list(responder_ids)};
  if (result.rows_per_party[1].size() != result.intersection_size) {
    throw IntegrityError("psi: asymmetric match (blinding collision)");
  }
  return result;
}

AlignmentResult psi_multi_party(const std::vector<std::vector<std::string>>& id_lists,
                                const BlindingGroup& group, Rng& rng) {
  if (id_lists.size() < 2) throw ParameterError("psi_multi_party: need at least 2 parties");
  for (const auto& ids : id_lists) check_unique(ids);

  const auto& leader_ids = id_lists[0];
  std::set<std::string> survivors(leader_ids.begin(), leader_ids.end());
  for (size_t j = 1; j < id_lists.size(); ++j) {
    Rng rng_l = rng.fork("leader-" + std::to_string(j));
    Rng rng_m = rng.fork("member-" + std::to_string(j));
    AlignmentResult pair = psi_two_party(leader_ids, id_lists[j], group, rng_l, rng_m);
    std::set<std::string> matched;
    for (size_t row : pair.rows_per_party[0]) matched.insert(leader_ids[row]);
    std::set<std::string> next;
    std::ranges::set_intersection(survivors, matched, std::inserter(next, next.begin()));
    survivors = std::move(next);
  }

  std::vector<std::string> common(survivors.begin(), survivors.end());  // sorted
  AlignmentResult result;
  result.intersection_size = common.size();
  for (const auto& ids : id_lists) {
    result.rows_per_party.push_back(rows_for_ids(ids, common));
    result.id_list_digests.push_back(digest_id_list(ids));
  }
  return result;
}

std::vector<data::PartyDataset> align_datasets(std::span<const data::PartyDataset> datasets,
                                               const AlignmentResult& result) {
  if (datasets.size() != result.rows_per_party.size()) {
    throw ParameterError("align_datasets: dataset count does not match result");
  }
  std::vector<data::PartyDataset> out;
  for (size_t p = 0; p < datasets.size(); ++p) {
    const auto& ds = datasets[p];
    if (digest_id_list(ds.entity_ids) != result.id_list_digests[p]) {
      throw IntegrityError("align_datasets: stale alignment result for party " + ds.party_id);
    }
    data::PartyDataset aligned = ds;
    aligned.entity_ids.clear();
    aligned.features.assign(ds.features.size(), {});
    if (ds.labels.has_value()) aligned.labels.emplace();
    for (size_t row : result.rows_per_party[p]) {
      if (row >= ds.rows()) throw IntegrityError("align_datasets: row index out of range");
      aligned.entity_ids.push_back(ds.entity_ids[row]);
      for (size_t f = 0; f < ds.features.size(); ++f) {
        aligned.features[f].push_back(ds.features[f][row]);
      }
      if (ds.labels.has_value()) aligned.labels->push_back((*ds.labels)[row]);
    }
    out.push_back(std::move(aligned));
  }
  // Positional consistency: the same entity digest at every position.
  for (size_t i = 0; i < result.intersection_size; ++i) {
    for (size_t p = 1; p < out.size(); ++p) {
      if (out[p].entity_ids[i] != out[0].entity_ids[i]) {
        throw IntegrityError("align_datasets: positional entity mismatch");
      }
    }
  }
  return out;
}

PsiPartyOutcome run_psi_pair(net::SimContext& ctx, const net::PartyId& peer, bool initiator,
                             std::span<const std::string> ids, const BlindingGroup& group,
                             Rng& rng, uint32_t round) {
  check_unique(ids);
  BlindingKey key = crypto::random_blinding_key(group, rng);
  std::vector<mpz_class> singles = blind_own_ids(ids, key, group);

  // Both sides send their singly-blinded list, then return the peer's list
  // double-blinded in unchanged order. The initiator speaks first on each
  // exchange to keep the transcript order fixed.
  std::vector<mpz_class> peer_singles;
  if (initiator) {
    ctx.send(peer, net::MsgType::kAlignBlind, round, encode_element_list(singles, group));
    peer_singles = decode_element_list(ctx.recv(peer).payload, group);
  } else {
    peer_singles = decode_element_list(ctx.recv(peer).payload, group);
    ctx.send(peer, net::MsgType::kAlignBlind, round, encode_element_list(singles, group));
  }

  std::vector<mpz_class> peer_doubles = blind_elements(peer_singles, key, group);
  std::vector<mpz_class> own_doubles;
  if (initiator) {
    ctx.send(peer, net::MsgType::kAlignReply, round, encode_element_list(peer_doubles, group));
    own_doubles = decode_element_list(ctx.recv(peer).payload, group);
  } else {
    own_doubles = decode_element_list(ctx.recv(peer).payload, group);
    ctx.send(peer, net::MsgType::kAlignReply, round, encode_element_list(peer_doubles, group));
  }
  if (own_doubles.size() != ids.size()) {
    throw ProtocolError("psi: peer returned wrong-sized double-blinded list");
  }

  PsiPartyOutcome outcome;
  outcome.local_rows = match_rows(ids, own_doubles, peer_doubles);
  for (size_t row : outcome.local_rows) outcome.common_ids.push_back(ids[row]);
  return outcome;
}

namespace {

Bytes encode_id_list(const std::vector<std::string>& ids) {
  wire::Writer w;
  w.str("align-final");
  w.u32(static_cast<uint32_t>(ids.size()));
  for (const auto& id : ids) w.str(id);
  return w.take();
}

std::vector<std::string> decode_id_list(std::span<const uint8_t> payload) {
  wire::Reader r(payload);
  if (r.str() != "align-final") throw DecodeError("psi: expected align-final control message");
  uint32_t count = r.u32();
  std::vector<std::string> out;
  out.reserve(count);
  for (uint32_t i = 0; i < count; ++i) out.push_back(r.str());
  r.expect_end();
  return out;
}

}  // namespace

PsiPartyOutcome run_psi_leader(net::SimContext& ctx, std::span<const net::PartyId> members,
                               std::span<const std::string> ids, const BlindingGroup& group,
                               Rng& rng, uint32_t round) {
  check_unique(ids);
  std::set<std::string> survivors(ids.begin(), ids.end());
  for (const auto& member : members) {
    Rng pair_rng = rng.fork("psi-" + member);
    PsiPartyOutcome pair = run_psi_pair(ctx, member, /*initiator=*/true, ids, group, pair_rng,
                                        round);
    std::set<std::string> matched(pair.common_ids.begin(), pair.common_ids.end());
    std::set<std::string> next;
    std::ranges::set_intersection(survivors, matched, std::inserter(next, next.begin()));
    survivors = std::move(next);
  }
  // The final set contains only mutual entities; announcing it to members
  // reveals nothing they will not hold after alignment anyway.
  std::vector<std::string> common(survivors.begin(), survivors.end());
  for (const auto& member : members) {
    ctx.send(member, net::MsgType::kControl, round, encode_id_list(common));
  }
  PsiPartyOutcome outcome;
  outcome.common_ids = common;
  outcome.local_rows = rows_for_ids(ids, common);
  return outcome;
}

PsiPartyOutcome run_psi_member(net::SimContext& ctx, const net::PartyId& leader,
                               std::span<const std::string> ids, const BlindingGroup& group,
                               Rng& rng, uint32_t round) {
  Rng pair_rng = rng.fork("psi-" + ctx.self());
  (void)run_psi_pair(ctx, leader, /*initiator=*/false, ids, group, pair_rng, round);
  net::Envelope fin = ctx.recv(leader);
  if (fin.msg_type != net::MsgType::kControl) {
    throw ProtocolError("psi: expected align-final control message");
  }
  PsiPartyOutcome outcome;
  outcome.common_ids = decode_id_list(fin.payload);
  outcome.local_rows = rows_for_ids(ids, outcome.common_ids);
  return outcome;
}

}  // namespace fedkit::align
