#ifndef ESK_ERRORS_HPP
#define ESK_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace esk {

enum class Errc {
  cap_exceeded,
  bad_edge,
  missing_edge,
  domain_mismatch,
  hall_violation,
  not_adjacent,
  precondition_mismatch,
  delta_out_of_range,
  empty_range,
  target_infeasible,
  parse_error,
  proof_gap,
  infeasible,
};

class Error : public std::runtime_error {
 public:
  Error(Errc c, std::string msg) : std::runtime_error(std::move(msg)), code_(c) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

// Raised by extend_leaves when some set of pending leaves has a joint
// neighborhood in the frontier smaller than itself. Carries that set.
class HallViolation : public Error {
 public:
  HallViolation(std::vector<int> leaves, std::string msg)
      : Error(Errc::hall_violation, std::move(msg)), leaves_(std::move(leaves)) {}
  const std::vector<int>& violating_leaves() const { return leaves_; }

 private:
  std::vector<int> leaves_;
};

}  // namespace esk

#endif
