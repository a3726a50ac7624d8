#ifndef SUBSEMI_ERROR_HPP
#define SUBSEMI_ERROR_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace subsemi {

enum class errc {
  entry_out_of_range,
  non_associative,
  degree_mismatch,
  degree_too_large,
  rank_out_of_range,
  not_a_permutation,
  not_an_ideal,
  action_not_closed,
  seed_not_closed,
  precondition_violated,
  too_large,
  too_large_for_canonicalization,
  empty_semigroup,
  bad_format,
  shard_corrupt,
};

// Single exception type for domain errors.  `witness` carries the indices
// that demonstrate the failure (1-based, matching the external formats):
// a failing triple for non_associative, an (element, ideal element) pair for
// not_an_ideal, the offending entry for entry_out_of_range, and so on.
class error : public std::runtime_error {
 public:
  error(errc code, std::string msg, std::vector<uint32_t> witness = {})
      : std::runtime_error(std::move(msg)), _code(code), _witness(std::move(witness)) {}

  errc code() const noexcept { return _code; }
  const std::vector<uint32_t>& witness() const noexcept { return _witness; }

 private:
  errc _code;
  std::vector<uint32_t> _witness;
};

}  // namespace subsemi

#endif
