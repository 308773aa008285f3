#include "balltrace/operator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace balltrace {

BlockOperator::BlockOperator(int dim, std::optional<double> nu, int max_degree)
    : dim_(dim), nu_(nu), max_degree_(max_degree), exact_degree_(max_degree) {
  if (dim < 1 || dim > max_dimension) throw domain_error("d", "dimension out of range");
  if (max_degree < 0) throw domain_error("degree", "must be >= 0");
}

std::vector<int> BlockOperator::shifts() const {
  std::vector<int> s;
  for (const auto& [k, v] : blocks_) s.push_back(k);
  return s;
}

int BlockOperator::max_raise() const {
  return blocks_.empty() ? 0 : std::max(0, blocks_.rbegin()->first);
}

int BlockOperator::max_lower() const {
  return blocks_.empty() ? 0 : std::max(0, -blocks_.begin()->first);
}

bool BlockOperator::is_degree_diagonal() const {
  return std::all_of(blocks_.begin(), blocks_.end(), [](const auto& kv) { return kv.first == 0; });
}

bool BlockOperator::has_block(int m, int s) const {
  if (m < 0 || m > max_degree_ || m + s < 0 || m + s > max_degree_) return false;
  return blocks_.count(s) != 0;
}

const SparseBlock& BlockOperator::block(int m, int s) const {
  if (!has_block(m, s)) throw std::out_of_range("BlockOperator: no block at this (shell, shift)");
  return blocks_.at(s)[static_cast<std::size_t>(m)];
}

void BlockOperator::ensure_shift(int s) {
  if (blocks_.count(s)) return;
  std::vector<SparseBlock> v(static_cast<std::size_t>(max_degree_) + 1);
  for (int m = 0; m <= max_degree_; ++m) {
    if (m + s < 0 || m + s > max_degree_) continue;
    v[static_cast<std::size_t>(m)].resize(static_cast<Eigen::Index>(shell_dim(dim_, m + s)),
                                          static_cast<Eigen::Index>(shell_dim(dim_, m)));
  }
  blocks_.emplace(s, std::move(v));
}

SparseBlock& BlockOperator::mutable_block(int m, int s) {
  if (!has_block(m, s)) throw std::out_of_range("BlockOperator: no block at this (shell, shift)");
  return blocks_.at(s)[static_cast<std::size_t>(m)];
}

DenseBlock BlockOperator::dense_block(int m, int s) const {
  if (has_block(m, s)) return DenseBlock(block(m, s));
  return DenseBlock::Zero(static_cast<Eigen::Index>(shell_dim(dim_, m + s)),
                          static_cast<Eigen::Index>(shell_dim(dim_, m)));
}

std::size_t BlockOperator::basis_size(int max_shell) const {
  return binomial(dim_ + max_shell, dim_);
}

void BlockOperator::require_compatible(const BlockOperator& other) const {
  if (dim_ != other.dim_ || max_degree_ != other.max_degree_ || nu_ != other.nu_)
    throw domain_error("operator", "operators act on different truncated spaces");
}

BlockOperator BlockOperator::adjoint() const {
  BlockOperator r(dim_, nu_, max_degree_);
  r.exact_degree_ = exact_degree_;
  for (const auto& [s, v] : blocks_) {
    r.ensure_shift(-s);
    for (int m = 0; m <= max_degree_; ++m)
      if (has_block(m, s)) r.mutable_block(m + s, -s) = v[static_cast<std::size_t>(m)].adjoint();
  }
  return r;
}

BlockOperator BlockOperator::scaled(Complex c) const {
  BlockOperator r = *this;
  for (auto& [s, v] : r.blocks_)
    for (auto& b : v) b *= c;
  return r;
}

namespace {

BlockOperator combine(const BlockOperator& a, const BlockOperator& b, double sign) {
  BlockOperator r(a.dim(), a.nu(), a.max_degree());
  r.set_exact_degree(std::min(a.exact_degree(), b.exact_degree()));
  for (int s : a.shifts()) r.ensure_shift(s);
  for (int s : b.shifts()) r.ensure_shift(s);
  for (int s : r.shifts()) {
    for (int m = 0; m <= a.max_degree(); ++m) {
      if (!r.has_block(m, s)) continue;
      auto& out = r.mutable_block(m, s);
      if (a.has_block(m, s)) out = a.block(m, s);
      if (b.has_block(m, s)) out = sign > 0 ? SparseBlock(out + b.block(m, s)) : SparseBlock(out - b.block(m, s));
    }
  }
  return r;
}

}  // namespace

BlockOperator operator+(const BlockOperator& a, const BlockOperator& b) {
  a.require_compatible(b);
  return combine(a, b, 1.0);
}

BlockOperator operator-(const BlockOperator& a, const BlockOperator& b) {
  a.require_compatible(b);
  return combine(a, b, -1.0);
}

BlockOperator toeplitz(const PolySymbol& f, double nu, int max_degree) {
  const int d = f.dim();
  if (nu < d) throw domain_error("nu", "must be >= d");
  if (max_degree < f.total_degree()) throw domain_error("degree", "truncation below the symbol degree");

  struct Term {
    MultiIndex a, b;
    Complex c;
    int shift;
  };
  std::vector<Term> terms;
  BlockOperator t(d, nu, max_degree);
  for (const auto& [key, c] : f.terms()) {
    const int s = key.first.degree() - key.second.degree();
    terms.push_back({key.first, key.second, c.value(), s});
    t.ensure_shift(s);
  }

#pragma omp parallel for schedule(dynamic)
  for (int m = 0; m <= max_degree; ++m) {
    std::map<int, std::vector<Eigen::Triplet<Complex>>> triplets;
    for (const Term& term : terms) {
      const int target = m + term.shift;
      if (target < 0 || target > max_degree) continue;
      const int k = term.a.degree();
      const int l = term.b.degree();
      const double den = pochhammer(nu + m, k) * pochhammer(nu + target, l);
      auto& out = triplets[term.shift];
      std::size_t col = 0;
      for_each_in_shell(d, m, [&](const MultiIndex& gamma) {
        const MultiIndex up = gamma + term.a;
        if (up.dominates(term.b)) {
          const MultiIndex delta = *up.minus(term.b);
          // <z^a zbar^b e_gamma, e_delta> with both factorials paired off
          double num = 1.0;
          for (int j = 0; j < d; ++j) {
            num *= pochhammer(gamma[j] + 1.0, term.a[j]);
            num *= pochhammer(delta[j] + 1.0, term.b[j]);
          }
          out.emplace_back(static_cast<Eigen::Index>(shell_rank(delta)), static_cast<Eigen::Index>(col),
                           term.c * std::sqrt(num / den));
        }
        ++col;
      });
    }
    for (auto& [s, trip] : triplets) {
      auto& blk = t.mutable_block(m, s);
      blk.setFromTriplets(trip.begin(), trip.end());
      blk.prune([](Eigen::Index, Eigen::Index, const Complex& v) { return v != Complex{}; });
    }
  }
  return t;
}

BlockOperator compose(const BlockOperator& a, const BlockOperator& b) {
  a.require_compatible(b);
  BlockOperator r(a.dim_, a.nu_, a.max_degree_);
  const int lost = std::max(0, std::min(b.max_raise(), a.max_lower()));
  r.exact_degree_ = std::max(-1, std::min(a.exact_degree_, b.exact_degree_) - lost);

  const auto sa = a.shifts();
  const auto sb = b.shifts();
  for (int x : sa)
    for (int y : sb) r.ensure_shift(x + y);

  const int n = a.max_degree_;
#pragma omp parallel for schedule(dynamic)
  for (int m = 0; m <= n; ++m) {
    for (int y : sb) {
      if (!b.has_block(m, y)) continue;
      const int mid = m + y;
      for (int x : sa) {
        if (!a.has_block(mid, x)) continue;
        auto& out = r.mutable_block(m, x + y);
        SparseBlock prod = a.block(mid, x) * b.block(m, y);
        out = out.nonZeros() ? SparseBlock(out + prod) : prod;
      }
    }
    for (auto& [s, v] : r.blocks_) {
      auto& blk = v[static_cast<std::size_t>(m)];
      if (blk.nonZeros()) blk.prune([](Eigen::Index, Eigen::Index, const Complex& val) { return val != Complex{}; });
    }
  }
  return r;
}

BlockOperator commutator(const BlockOperator& a, const BlockOperator& b) {
  return compose(a, b) - compose(b, a);
}

BlockOperator antisymmetrize(const std::vector<BlockOperator>& ops) {
  const int n = static_cast<int>(ops.size());
  if (n < 1 || n > 16) throw domain_error("operators", "antisymmetrization needs 1..16 operators");
  for (const auto& op : ops)
    if (op.dim() != ops.front().dim() || op.max_degree() != ops.front().max_degree() || op.nu() != ops.front().nu())
      throw domain_error("operators", "operators act on different truncated spaces");

  // alt(S) = sum_{i in S} (-1)^{position of i in S} A_i alt(S \ {i})
  std::map<unsigned, BlockOperator> memo;
  auto alt = [&](auto&& self, unsigned mask) -> const BlockOperator& {
    if (auto it = memo.find(mask); it != memo.end()) return it->second;
    std::optional<BlockOperator> acc;
    int position = 0;
    for (int i = 0; i < n; ++i) {
      if (!(mask & (1u << i))) continue;
      const unsigned rest = mask & ~(1u << i);
      BlockOperator term = rest ? compose(ops[static_cast<std::size_t>(i)], self(self, rest))
                                : ops[static_cast<std::size_t>(i)];
      if (position % 2) term = term.scaled(-1.0);
      acc = acc ? *acc + term : term;
      ++position;
    }
    return memo.emplace(mask, std::move(*acc)).first->second;
  };
  return alt(alt, (1u << n) - 1u);
}

double max_abs_difference(const BlockOperator& a, const BlockOperator& b, int window) {
  const BlockOperator diff = a - b;
  return max_abs_entry(diff, window);
}

double max_abs_entry(const BlockOperator& a, int window) {
  double worst = 0.0;
  for (int s : a.shifts())
    for (int m = 0; m <= std::min(window, a.max_degree()); ++m) {
      if (!a.has_block(m, s) || m + s > window) continue;
      const auto& blk = a.block(m, s);
      for (int k = 0; k < blk.outerSize(); ++k)
        for (SparseBlock::InnerIterator it(blk, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
    }
  return worst;
}

HankelGram hankel_gram_checked(const PolySymbol& f, double nu, int max_degree) {
  if (!f.is_holomorphic()) throw domain_error("f", "hankel_gram needs a holomorphic symbol");
  const PolySymbol fbar = f.conj();
  const BlockOperator tf = toeplitz(f, nu, max_degree);
  const BlockOperator tfbar = toeplitz(fbar, nu, max_degree);
  BlockOperator route1 = commutator(tfbar, tf);
  const BlockOperator route2 = toeplitz(f * fbar, nu, max_degree) - compose(tf, tfbar);
  const int window = std::min(route1.exact_degree(), route2.exact_degree());
  route1.set_exact_degree(window);
  const double dev = max_abs_difference(route1, route2, window);
  const double scale = std::max(1.0, max_abs_entry(route1, window));
  if (dev > 1e-12 * scale)
    throw std::logic_error("hankel_gram: commutator and |f|^2 routes disagree by " + std::to_string(dev));
  return {std::move(route1), dev};
}

BlockOperator hankel_gram(const PolySymbol& f, double nu, int max_degree) {
  return hankel_gram_checked(f, nu, max_degree).op;
}

DenseBlock dense_window(const BlockOperator& a, int window) {
  if (window > a.max_degree()) throw domain_error("window", "exceeds truncation");
  const GradedBasis basis(a.dim(), window);
  const auto n = static_cast<Eigen::Index>(basis.size());
  DenseBlock out = DenseBlock::Zero(n, n);
  for (int s : a.shifts())
    for (int m = 0; m <= window; ++m) {
      if (!a.has_block(m, s) || m + s > window) continue;
      const auto row0 = static_cast<Eigen::Index>(basis.shell_offset(m + s));
      const auto col0 = static_cast<Eigen::Index>(basis.shell_offset(m));
      const auto& blk = a.block(m, s);
      for (int k = 0; k < blk.outerSize(); ++k)
        for (SparseBlock::InnerIterator it(blk, k); it; ++it) out(row0 + it.row(), col0 + it.col()) += it.value();
    }
  return out;
}

}  // namespace balltrace
