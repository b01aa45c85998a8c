#ifndef PARETO_TAME_COMMON_HPP
#define PARETO_TAME_COMMON_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace pareto_tame {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Zero-based objective indices. Kept sorted and duplicate free by the
/// functions that build them.
using IndexSet = std::vector<std::size_t>;

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The caller handed us something malformed: bad syntax, wrong dimension,
/// a violated precondition. The CLI maps these to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A computation could not be carried out with the required guarantees.
/// The CLI maps these to exit code 3.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : InputError(message + " at byte " + std::to_string(offset)),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class DimensionError : public InputError {
 public:
  using InputError::InputError;
};

/// Raised by subdiff when a nonsmooth node sits inside another nonsmooth node
/// at its kink and the caller did not allow an over-approximating hull.
class InexactCompositionError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Active constraint normals at a point are linearly dependent, so the cone
/// they generate is not known to be the normal cone.
class DegenerateCornerError : public NumericalError {
 public:
  DegenerateCornerError(const std::string& message,
                        std::vector<std::string> active)
      : NumericalError(message), active_(std::move(active)) {}

  const std::vector<std::string>& active_set() const noexcept {
    return active_;
  }

 private:
  std::vector<std::string> active_;
};

class BranchExplosionError : public InputError {
 public:
  using InputError::InputError;
};

class NoAdmissibleProbesError : public InputError {
 public:
  using InputError::InputError;
};

class HypothesisError : public InputError {
 public:
  using InputError::InputError;
};

/// Formats a real with 12 significant digits; used by every human-readable
/// report so that output is byte-stable.
std::string format_real(double value);

/// Shortest decimal text that parses back to the same double.
std::string format_roundtrip(double value);

std::string format_vec(const Vec& v);

/// "1,2" (one-based) for an index set.
std::string format_index_set(const IndexSet& indices);

Vec make_vec(std::initializer_list<double> values);
Vec to_vec(const std::vector<double>& values);

/// Maximum number of worker threads; reads PARETO_TAME_THREADS once.
std::size_t thread_cap();

}  // namespace pareto_tame

#endif  // PARETO_TAME_COMMON_HPP
