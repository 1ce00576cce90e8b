#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace routequbo {

class QuboError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using VarId = std::uint32_t;

/// Allocates densely numbered binary variables with unique semantic labels.
class VarRegistry {
 public:
  VarRegistry();

  VarId add(const std::string& label);
  std::size_t size() const { return labels_.size(); }
  const std::string& label(VarId v) const;
  std::optional<VarId> find(const std::string& label) const;
  std::uint64_t uid() const { return uid_; }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, VarId> by_label_;
  std::uint64_t uid_;
};

/// Sparse quadratic form over binary variables: energy(x) = sum of
/// coeff * x_p * x_q over stored upper-triangular terms, plus a constant
/// offset. Diagonal entries are the linear terms (x*x = x).
class Qubo {
 public:
  using Key = std::pair<VarId, VarId>;

  explicit Qubo(const VarRegistry& reg) : registry_(&reg) {}
  explicit Qubo(std::size_t num_vars) : fixed_n_(num_vars) {}

  std::size_t num_vars() const { return registry_ ? registry_->size() : fixed_n_; }
  double offset() const { return offset_; }
  const std::map<Key, double>& terms() const { return terms_; }
  std::optional<std::uint64_t> registry_uid() const;
  const VarRegistry* registry_ptr() const { return registry_; }

  void add_offset(double c);
  void add_linear(VarId p, double c);
  void add_quadratic(VarId p, VarId q, double c);
  double coefficient(VarId p, VarId q) const;

  double energy(std::span<const std::uint8_t> x) const;

  void freeze();
  bool frozen() const { return frozen_; }

  std::uint64_t checksum() const;

  std::string to_json_string() const;
  std::string to_coord_string() const;
  static Qubo from_json_string(const std::string& text);

 private:
  void ensure_mutable() const;

  const VarRegistry* registry_ = nullptr;
  std::size_t fixed_n_ = 0;
  std::map<Key, double> terms_;
  double offset_ = 0.0;
  bool frozen_ = false;
};

/// A bounded non-negative integer as a weighted sum of fresh binary
/// variables. The coefficient list is the capped binary expansion of the
/// bound, so representable values are exactly {0, ..., bound}.
struct BoundedInt {
  std::vector<std::pair<VarId, long long>> bits;
  long long bound = 0;
};

/// Coefficients 2^0 .. 2^(m-1) plus the residual r = C - (2^m - 1) when
/// r > 0, with m = floor(log2(C + 1)). Empty for C = 0.
std::vector<long long> capped_expansion(long long bound);

/// Number of bits capped_expansion(bound) yields, i.e. ceil(log2(bound+1)).
int capped_expansion_bits(long long bound);

BoundedInt new_bounded_int(VarRegistry& reg, long long bound,
                           const std::string& label_prefix);

/// Greedy bit pattern for a concrete value of a capped expansion.
/// Returns one bit flag per coefficient; value must lie in {0, ..., bound}.
std::vector<std::uint8_t> expansion_bits_for_value(
    const std::vector<long long>& coeffs, long long value);

// Constraint gadgets. Each adds lambda times a penalty that is zero exactly
// when the constraint holds and at least lambda otherwise (for integer
// coefficients). Penalties are pointwise non-negative.

/// x + y <= 1, penalty x*y.
void add_at_most_one_pair(Qubo& q, VarId x, VarId y, double lambda = 1.0);

/// x <= y, penalty x - x*y.
void add_leq_pair(Qubo& q, VarId x, VarId y, double lambda = 1.0);

/// z = x * y, penalty x*y - 2*x*z - 2*y*z + 3*z.
void add_product(Qubo& q, VarId x, VarId y, VarId z, double lambda = 1.0);

struct LinearTerm {
  VarId var;
  long long coeff;
};

/// sum_i coeff_i * x_i = c, penalty (sum - c)^2 expanded with x*x = x.
void add_linear_eq(Qubo& q, std::span<const LinearTerm> terms, long long c,
                   double lambda = 1.0);

/// sum_i coeff_i * x_i <= c via a capped slack expansion xi with
/// bound c - sum of negative coefficients; penalty (sum + xi - c)^2.
BoundedInt add_linear_leq(Qubo& q, VarRegistry& reg,
                          std::span<const LinearTerm> terms, long long c,
                          double lambda, const std::string& slack_label_prefix);

/// Coefficient-wise weighted sum. All parts must share one registry.
Qubo compose(std::span<const std::pair<const Qubo*, double>> parts);

}  // namespace routequbo
