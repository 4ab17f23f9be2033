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

#pragma once

#include <span>
#include <string>
#include <vector>

#include "fedkit/crypto/blinding.hpp"
#include "fedkit/data/dataset.hpp"
#include "fedkit/net/simnet.hpp"

namespace fedkit::align {

// Secure sample alignment via commutative-blinding PSI: each party blinds
// its hashed ids with a secret exponent, exchanges lists, double-blinds the
// peer's list, and matches double-blinded values. Both parties learn exactly
// which of their rows are in the intersection and nothing about other ids
// (DDH assumption). Intersection order is canonical: ascending id digest,
// identical on every party.

struct AlignmentResult {
  // rows_per_party[p][i] is party p's local row index of the i-th common
  // entity; all lists have length intersection_size and identical order.
  std::vector<std::vector<size_t>> rows_per_party;
  size_t intersection_size = 0;
  // Digest of each party's id list at alignment time; align_datasets uses
  // these to reject stale results.
  std::vector<Digest32> id_list_digests;
};

Digest32 digest_id_list(std::span<const std::string> ids);

AlignmentResult psi_two_party(std::span<const std::string> initiator_ids,
                              std::span<const std::string> responder_ids,
                              const crypto::BlindingGroup& group, Rng& initiator_rng,
                              Rng& responder_rng);

// n-party extension: the first list's holder acts as leader and intersects
// pairwise results. The leader learns each pairwise intersection; members
// learn only the final intersection.
AlignmentResult psi_multi_party(const std::vector<std::vector<std::string>>& id_lists,
                                const crypto::BlindingGroup& group, Rng& rng);

// Restricts and reorders every dataset to the intersection, same entity at
// the same position everywhere. Throws IntegrityError on a stale result.
std::vector<data::PartyDataset> align_datasets(std::span<const data::PartyDataset> datasets,
                                               const AlignmentResult& result);

// --- Envelope-driven protocol (used inside jobs) ---------------------------

// Each returns this party's matched local rows in canonical order.
struct PsiPartyOutcome {
  std::vector<size_t> local_rows;
  std::vector<std::string> common_ids;  // canonical order
};

PsiPartyOutcome run_psi_pair(net::SimContext& ctx, const net::PartyId& peer, bool initiator,
                             std::span<const std::string> ids,
                             const crypto::BlindingGroup& group, Rng& rng, uint32_t round);

PsiPartyOutcome run_psi_leader(net::SimContext& ctx, std::span<const net::PartyId> members,
                               std::span<const std::string> ids,
                               const crypto::BlindingGroup& group, Rng& rng, uint32_t round);

PsiPartyOutcome run_psi_member(net::SimContext& ctx, const net::PartyId& leader,
                               std::span<const std::string> ids,
                               const crypto::BlindingGroup& group, Rng& rng, uint32_t round);

}  // namespace fedkit::align
