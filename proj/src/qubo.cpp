#include "routequbo/qubo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <sstream>

#include "json.hpp"

namespace routequbo {

namespace {

std::uint64_t next_registry_uid() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1);
}

}  // namespace

VarRegistry::VarRegistry() : uid_(next_registry_uid()) {}

VarId VarRegistry::add(const std::string& label) {
  auto [it, inserted] = by_label_.emplace(label, static_cast<VarId>(labels_.size()));
  if (!inserted) {
    throw QuboError("duplicate variable label: " + label);
  }
  labels_.push_back(label);
  return it->second;
}

const std::string& VarRegistry::label(VarId v) const {
  if (v >= labels_.size()) {
    throw QuboError("variable id out of range");
  }
  return labels_[v];
}

std::optional<VarId> VarRegistry::find(const std::string& label) const {
  auto it = by_label_.find(label);
  if (it == by_label_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::uint64_t> Qubo::registry_uid() const {
  if (registry_ == nullptr) return std::nullopt;
  return registry_->uid();
}

void Qubo::ensure_mutable() const {
  if (frozen_) {
    throw QuboError("qubo is frozen");
  }
}

void Qubo::add_offset(double c) {
  ensure_mutable();
  offset_ += c;
}

void Qubo::add_linear(VarId p, double c) { add_quadratic(p, p, c); }

void Qubo::add_quadratic(VarId p, VarId q, double c) {
  ensure_mutable();
  if (c == 0.0) return;
  if (p > q) std::swap(p, q);
  auto it = terms_.find({p, q});
  if (it == terms_.end()) {
    terms_.emplace(Key{p, q}, c);
    return;
  }
  it->second += c;
  if (it->second == 0.0) terms_.erase(it);
}

double Qubo::coefficient(VarId p, VarId q) const {
  if (p > q) std::swap(p, q);
  auto it = terms_.find({p, q});
  return it == terms_.end() ? 0.0 : it->second;
}

double Qubo::energy(std::span<const std::uint8_t> x) const {
  if (x.size() != num_vars()) {
    throw QuboError("assignment length does not match variable count");
  }
  double e = offset_;
  for (const auto& [key, c] : terms_) {
    if (x[key.first] && x[key.second]) e += c;
  }
  return e;
}

void Qubo::freeze() { frozen_ = true; }

std::uint64_t Qubo::checksum() const {
  // FNV-1a over the canonical term list.
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= p[i];
      h *= 1099511628211ULL;
    }
  };
  std::uint64_t n = num_vars();
  mix(&n, sizeof n);
  mix(&offset_, sizeof offset_);
  for (const auto& [key, c] : terms_) {
    mix(&key.first, sizeof key.first);
    mix(&key.second, sizeof key.second);
    mix(&c, sizeof c);
  }
  return h;
}

std::string Qubo::to_json_string() const {
  nlohmann::json j;
  j["n"] = num_vars();
  j["offset"] = offset_;
  auto& arr = j["terms"] = nlohmann::json::array();
  for (const auto& [key, c] : terms_) {
    arr.push_back({key.first, key.second, c});
  }
  return j.dump(2);
}

std::string Qubo::to_coord_string() const {
  std::ostringstream out;
  out << "# qubo coordinate format: p q coeff; n=" << num_vars()
      << " offset=" << offset_ << "\n";
  for (const auto& [key, c] : terms_) {
    out << key.first << " " << key.second << " " << c << "\n";
  }
  return out.str();
}

Qubo Qubo::from_json_string(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  Qubo q(j.at("n").get<std::size_t>());
  q.offset_ = j.at("offset").get<double>();
  for (const auto& t : j.at("terms")) {
    VarId p = t.at(0).get<VarId>();
    VarId v = t.at(1).get<VarId>();
    if (p >= q.num_vars() || v >= q.num_vars()) {
      throw QuboError("qubo term references variable beyond n");
    }
    q.add_quadratic(p, v, t.at(2).get<double>());
  }
  return q;
}

std::vector<long long> capped_expansion(long long bound) {
  if (bound < 0) {
    throw QuboError("bounded integer requires a non-negative bound");
  }
  std::vector<long long> coeffs;
  long long pow_sum = 0;  // 2^m - 1 after m doublings
  long long next = 1;
  while (pow_sum + next <= bound) {
    coeffs.push_back(next);
    pow_sum += next;
    next *= 2;
  }
  if (bound > pow_sum) coeffs.push_back(bound - pow_sum);
  return coeffs;
}

int capped_expansion_bits(long long bound) {
  return static_cast<int>(capped_expansion(bound).size());
}

BoundedInt new_bounded_int(VarRegistry& reg, long long bound,
                           const std::string& label_prefix) {
  BoundedInt out;
  out.bound = bound;
  auto coeffs = capped_expansion(bound);
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    VarId v = reg.add(label_prefix + "[" + std::to_string(j) + "]");
    out.bits.emplace_back(v, coeffs[j]);
  }
  return out;
}

std::vector<std::uint8_t> expansion_bits_for_value(
    const std::vector<long long>& coeffs, long long value) {
  // Take coefficients largest-first; the capped expansion shape makes this
  // greedy exact for every value in {0, ..., sum}.
  std::vector<std::size_t> order(coeffs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return coeffs[a] > coeffs[b]; });
  std::vector<std::uint8_t> bits(coeffs.size(), 0);
  long long rest = value;
  for (std::size_t idx : order) {
    if (coeffs[idx] <= rest) {
      bits[idx] = 1;
      rest -= coeffs[idx];
    }
  }
  if (rest != 0) {
    throw QuboError("value " + std::to_string(value) +
                    " not representable in expansion");
  }
  return bits;
}

void add_at_most_one_pair(Qubo& q, VarId x, VarId y, double lambda) {
  if (x == y) throw QuboError("at-most-one gadget needs distinct variables");
  q.add_quadratic(x, y, lambda);
}

void add_leq_pair(Qubo& q, VarId x, VarId y, double lambda) {
  if (x == y) throw QuboError("leq gadget needs distinct variables");
  q.add_linear(x, lambda);
  q.add_quadratic(x, y, -lambda);
}

void add_product(Qubo& q, VarId x, VarId y, VarId z, double lambda) {
  if (x == y || x == z || y == z) {
    throw QuboError("product gadget needs three distinct variables");
  }
  q.add_quadratic(x, y, lambda);
  q.add_quadratic(x, z, -2.0 * lambda);
  q.add_quadratic(y, z, -2.0 * lambda);
  q.add_linear(z, 3.0 * lambda);
}

namespace {

// Merge repeated variables before expanding the square.
std::vector<LinearTerm> merged_terms(std::span<const LinearTerm> terms) {
  std::map<VarId, long long> acc;
  for (const auto& t : terms) acc[t.var] += t.coeff;
  std::vector<LinearTerm> out;
  out.reserve(acc.size());
  for (const auto& [v, c] : acc) {
    if (c != 0) out.push_back({v, c});
  }
  return out;
}

void add_squared_penalty(Qubo& q, const std::vector<LinearTerm>& terms,
                         long long c, double lambda) {
  // (sum a_i x_i - c)^2 with x_i^2 = x_i.
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& ti = terms[i];
    q.add_linear(ti.var,
                 lambda * static_cast<double>(ti.coeff) *
                     static_cast<double>(ti.coeff - 2 * c));
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      const auto& tj = terms[j];
      q.add_quadratic(ti.var, tj.var,
                      lambda * 2.0 * static_cast<double>(ti.coeff) *
                          static_cast<double>(tj.coeff));
    }
  }
  q.add_offset(lambda * static_cast<double>(c) * static_cast<double>(c));
}

}  // namespace

void add_linear_eq(Qubo& q, std::span<const LinearTerm> terms, long long c,
                   double lambda) {
  add_squared_penalty(q, merged_terms(terms), c, lambda);
}

BoundedInt add_linear_leq(Qubo& q, VarRegistry& reg,
                          std::span<const LinearTerm> terms, long long c,
                          double lambda,
                          const std::string& slack_label_prefix) {
  auto merged = merged_terms(terms);
  long long negative_sum = 0;
  for (const auto& t : merged) {
    if (t.coeff < 0) negative_sum += t.coeff;
  }
  long long slack_bound = c - negative_sum;
  if (slack_bound < 0) {
    throw QuboError("inequality is infeasible for every assignment (bound " +
                    std::to_string(slack_bound) + ")");
  }
  BoundedInt slack = new_bounded_int(reg, slack_bound, slack_label_prefix);
  for (const auto& [v, coeff] : slack.bits) merged.push_back({v, coeff});
  add_squared_penalty(q, merged, c, lambda);
  return slack;
}

Qubo compose(std::span<const std::pair<const Qubo*, double>> parts) {
  if (parts.empty()) throw QuboError("compose needs at least one part");
  const Qubo* first = parts.front().first;
  const VarRegistry* reg = nullptr;
  for (const auto& [part, lambda] : parts) {
    if (reg == nullptr) reg = part->registry_ptr();
  }
  Qubo out = reg ? Qubo(*reg) : Qubo(first->num_vars());
  for (const auto& [part, lambda] : parts) {
    if (part->num_vars() != first->num_vars()) {
      throw QuboError("compose parts built against different registries");
    }
    // parts that kept a registry binding must all share one registry
    if (part->registry_ptr() != nullptr && reg != nullptr &&
        part->registry_uid() != reg->uid()) {
      throw QuboError("compose parts built against different registries");
    }
    out.add_offset(lambda * part->offset());
    for (const auto& [key, coeff] : part->terms()) {
      out.add_quadratic(key.first, key.second, lambda * coeff);
    }
  }
  return out;
}

}  // namespace routequbo
