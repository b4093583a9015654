#ifndef EFFGRAPH_STRUCTURE_STRUCTURE_CODING_HPP
#define EFFGRAPH_STRUCTURE_STRUCTURE_CODING_HPP

// Coding bits into an isomorphic copy N of a non-trivial structure M.
//
// N is built by placing elements of M on positions 0, 1, 2, ... in stages.
// A stage finds the least formula phi(a; y) (a = everything placed so far)
// with a satisfying tuple b and a refuting tuple c of fresh elements, places
// b to code a 0 or c to code a 1, then places the least element not yet
// placed. N pulls M back along the placement, so the placement is an
// isomorphism from N onto M.
//
// The coded bits come from a queue: even slots carry payload bits, odd
// slots carry the bits of the placement records of earlier stages. A record
// is the coded bit, then the number of elements placed and their identities,
// each a framed natural (1^k 0 followed by the k-bit binary value).
//
// Finding "the least formula" needs a jump in general. Here the encoder
// searches with a budget and emits, per stage, the number of tuples the
// decoder must walk in N to see the same formula separate two tuples.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "effgraph/core/oracles.hpp"
#include "effgraph/errors.hpp"
#include "effgraph/structure/formula.hpp"

namespace effgraph::structure {

class TrivialityDetected : public BudgetExhausted {
 public:
  TrivialityDetected(std::size_t stage, Natural budget);
  std::size_t stage() const { return stage_; }

 private:
  std::size_t stage_;
};

struct AtomWitness {
  std::string relation;
  std::vector<Natural> args;
};

class IsomorphismCheckFailed : public Error {
 public:
  explicit IsomorphismCheckFailed(AtomWitness witness);
  const AtomWitness& witness() const { return witness_; }

 private:
  AtomWitness witness_;
};

struct StageRecord {
  Natural first_position = 0;    // positions < first_position were placed before this stage
  Distinguisher distinguisher;   // found in M; tuples are elements of M
  bool bit = false;
  std::vector<Natural> coded;    // distinguisher.satisfied (bit 0) or .refuted (bit 1)
  Natural filler = 0;            // least unplaced element, placed after `coded`
};

struct PlacementState {
  std::vector<Natural> placed;   // position -> element of M
  std::vector<StageRecord> log;
};

struct EncodingCertificate {
  std::vector<Natural> stage_bounds;  // decoder tuple budget per stage
  Natural table_bound = 0;            // positions of N the decoder reads at max_bound()
  Natural max_bound() const;
};

struct StructureEncoding {
  StructureOracle coded;  // N on all of N: positions past the last stage hold the rest of M in order
  PlacementState placement;
  EncodingCertificate certificate;
  std::vector<bool> queue;          // coded bits, one per stage
  std::vector<bool> payload_bits;   // queue slots 0, 2, 4, ...
  std::vector<bool> record_stream;  // all placement-record bits produced
  Natural recoverable_positions = 0;  // positions described by records fully inside the queue
};

// Bit-level framing of the queue.
std::vector<bool> frame_natural(Natural value);
std::vector<bool> placement_record(bool bit, std::span<const Natural> elements);

struct ParsedRecord {
  bool bit = false;
  std::vector<Natural> elements;
};
// Complete records at the front of `stream`; a trailing partial record is ignored.
std::vector<ParsedRecord> parse_records(const std::vector<bool>& stream);

// Throws TrivialityDetected when a stage finds no distinguishing formula
// within budget, InternalContradiction when the decoder would not reproduce
// a stage decision (the certificate cannot be issued).
StructureEncoding encode_structure(const StructureOracle& m, const BitStream& payload, std::size_t stages,
                                   Natural budget);

struct DecodedStage {
  Natural first_position = 0;
  Distinguisher distinguisher;  // tuples are positions of N
  bool bit = false;
};

struct DecodedStructure {
  std::vector<bool> queue;
  std::vector<bool> payload_bits;
  std::vector<Natural> placement_prefix;  // f on positions 0 .. size - 1
  std::vector<DecodedStage> log;
};

// Throws BudgetExhausted when a stage does not converge within budget, and
// InternalContradiction when a decoded record disagrees with N.
DecodedStructure decode_structure(const StructureOracle& coded, std::size_t stages, Natural budget);

// Re-evaluates a decoded stage against N.
bool replay(const StructureOracle& coded, const DecodedStage& stage);

// First atom over [0, prefix) where M and N disagree under g.
std::optional<AtomWitness> check_isomorphism_table(const StructureOracle& m, const StructureOracle& n,
                                                   std::span<const Natural> g, Natural prefix);

// Bijection agreeing with f_on_f on F and order-preserving from M \ F onto
// N \ f(F), tabulated on [0, prefix). Throws IsomorphismCheckFailed with the
// first failing atom (relation order, then lexicographic tuples).
std::vector<Natural> trivial_extend_iso(const StructureOracle& m, const StructureOracle& n,
                                        const std::map<Natural, Natural>& f_on_f, Natural prefix);

// A non-triviality witness over the parameter set `f`, if found within budget.
std::optional<Distinguisher> is_trivial_within(const StructureOracle& m, std::span<const Natural> f,
                                               Natural budget);

}  // namespace effgraph::structure

#endif  // EFFGRAPH_STRUCTURE_STRUCTURE_CODING_HPP
