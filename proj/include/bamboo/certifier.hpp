#pragma once

// Exact ideal membership within a budget. A target is written as a rational
// combination of relation-instance expansions by fraction-free echelon
// reduction over integer vectors indexed by terms in canonical order.

#include "bamboo/relations.hpp"
#include "bamboo/serialize.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace bamboo {

// ---------------------------------------------------------------------------
// hashing

inline std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 15]);
  }
  return out;
}

inline std::string target_hash(const FormalSum& target) { return sha256_hex(canonical_json(target)); }

// ---------------------------------------------------------------------------
// certificates

struct CertEntry {
  RelationInstance instance;
  Rational coeff;
  bool operator==(const CertEntry&) const = default;
};

struct Certificate {
  std::string target_hash;
  std::vector<CertEntry> entries;
  bool operator==(const Certificate&) const = default;
};

inline FormalSum certificate_sum(const Certificate& cert) {
  FormalSum s;
  for (const auto& e : cert.entries) s += e.coeff * expand(e.instance);
  return s;
}

/// Soundness check by pure expansion; never throws.
inline bool verify_certificate(const Certificate& cert, const FormalSum& target) {
  try {
    if (cert.target_hash != target_hash(target)) return false;
    return certificate_sum(cert) == target;
  } catch (const std::exception&) {
    return false;
  }
}

inline Json to_json(const Certificate& cert) {
  Json entries = Json::array();
  for (const auto& e : cert.entries)
    entries.push_back({{"instance", to_json(e.instance)}, {"coeff", to_fraction_string(e.coeff)}});
  return Json{{"target_hash", cert.target_hash}, {"entries", entries}};
}

inline Certificate certificate_from_json(const Json& j) {
  Certificate c;
  c.target_hash = j.at("target_hash").get<std::string>();
  for (const auto& e : j.at("entries"))
    c.entries.push_back(CertEntry{instance_from_json(e.at("instance")), parse_fraction_string(e.at("coeff").get<std::string>())});
  return c;
}

// ---------------------------------------------------------------------------
// sectors

/// The sector a homogeneous target lives in: its genus, degree, leg layouts
/// and omega kind.
inline SectorSpec sector_of(const FormalSum& target) {
  if (target.empty()) throw std::invalid_argument("sector_of: empty target");
  if (!target.homogeneous()) throw std::invalid_argument("certify: inhomogeneous target");
  SectorSpec sec;
  sec.degree = *target.grade();
  sec.genus = target.begin()->first.bamboo.total_genus();
  std::set<std::tuple<Leg, Leg, Leg>> layouts;
  bool first = true;
  for (const auto& [t, c] : target) {
    if (t.bamboo.total_genus() != sec.genus) throw std::invalid_argument("certify: target mixes genera");
    std::optional<OmegaClass> w;
    if (t.omega) w = OmegaClass{t.omega->kind, t.omega->h};
    if (first)
      sec.omega = w;
    else if (w != sec.omega)
      throw std::invalid_argument("certify: target mixes omega sectors");
    first = false;
    layouts.emplace(t.bamboo.left_leg, t.bamboo.right_leg, t.bamboo.extra_leg);
  }
  for (const auto& [l, r, x] : layouts) sec.layouts.push_back(Layout{l, r, x});
  return sec;
}

/// Expanded instances of one sector, with terms indexed in canonical order.
struct SectorSystem {
  SectorSpec sector;
  Budget budget;
  std::vector<RelationInstance> instances;
  std::vector<std::vector<std::pair<std::size_t, Integer>>> columns;  // sorted by term index
  std::vector<Term> terms;
  std::map<Term, std::size_t, TermLess> index;
  std::size_t skipped = 0;  // unrepresentable instances
};

namespace detail {

inline std::vector<std::pair<std::size_t, Integer>> integer_column(const FormalSum& s,
                                                                    const std::map<Term, std::size_t, TermLess>& index) {
  Integer den = 1;
  for (const auto& [t, c] : s) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<std::pair<std::size_t, Integer>> col;
  col.reserve(s.size());
  for (const auto& [t, c] : s) {
    Rational scaled = c * den;
    col.emplace_back(index.at(t), scaled.get_num());
  }
  std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return col;
}

template <class F>
void parallel_for(std::size_t n, int jobs, F&& f) {
  const std::size_t workers = std::min<std::size_t>(n, std::size_t(std::max(1, jobs)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr err;
  std::mutex err_mu;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mu);
          if (!err) err = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace detail

inline std::shared_ptr<const SectorSystem> build_system(const SectorSpec& sec, const Budget& budget, int jobs = 1) {
  auto sys = std::make_shared<SectorSystem>();
  sys->sector = sec;
  sys->budget = budget;
  std::vector<RelationInstance> all = enumerate_instances(sec, budget);
  std::vector<std::optional<FormalSum>> sums(all.size());
  detail::parallel_for(all.size(), jobs, [&](std::size_t i) {
    try {
      FormalSum e = expand(all[i]);
      if (!e.empty()) sums[i] = std::move(e);
    } catch (const Unrepresentable&) {
    }
  });
  std::set<Term, TermLess> support;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (!sums[i]) {
      ++sys->skipped;
      continue;
    }
    for (const auto& [t, c] : *sums[i]) support.insert(t);
  }
  sys->terms.assign(support.begin(), support.end());
  for (std::size_t i = 0; i < sys->terms.size(); ++i) sys->index.emplace(sys->terms[i], i);
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (!sums[i]) continue;
    sys->instances.push_back(all[i]);
    sys->columns.push_back(detail::integer_column(*sums[i], sys->index));
  }
  return sys;
}

/// Process-wide cache of sector systems, so identities sharing a sector
/// (and repeated runs in one process) reuse the expanded instances.
class SystemCache {
 public:
  std::shared_ptr<const SectorSystem> get(const SectorSpec& sec, const Budget& budget, int jobs) {
    const std::string key = key_of(sec, budget);
    std::shared_ptr<std::once_flag> flag;
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto& slot = slots_[key];
      if (!slot.flag) slot.flag = std::make_shared<std::once_flag>();
      flag = slot.flag;
    }
    std::call_once(*flag, [&] {
      auto sys = build_system(sec, budget, jobs);
      std::lock_guard<std::mutex> lock(mu_);
      slots_[key].sys = sys;
    });
    std::lock_guard<std::mutex> lock(mu_);
    return slots_[key].sys;
  }

  void clear() {
    std::lock_guard<std::mutex> lock(mu_);
    slots_.clear();
  }

 private:
  static std::string key_of(const SectorSpec& sec, const Budget& b) {
    std::string k = std::to_string(sec.genus) + "/" + std::to_string(sec.degree) + "/";
    for (const auto& l : sec.layouts) k += std::to_string(l.left) + std::to_string(l.right) + std::to_string(l.extra) + ",";
    if (sec.omega) k += "/w" + std::to_string(int(sec.omega->kind)) + ":" + std::to_string(sec.omega->h);
    k += "/" + std::to_string(b.context_len) + ":" + std::to_string(b.max_r);
    return k;
  }
  struct Slot {
    std::shared_ptr<std::once_flag> flag;
    std::shared_ptr<const SectorSystem> sys;
  };
  std::mutex mu_;
  std::map<std::string, Slot> slots_;
};

inline SystemCache& system_cache() {
  static SystemCache c;
  return c;
}

// ---------------------------------------------------------------------------
// elimination

enum class OutcomeKind : std::uint8_t { Certified, ZeroExactly, UnresolvedWithinBudget };

inline const char* outcome_name(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::Certified: return "Certified";
    case OutcomeKind::ZeroExactly: return "ZeroExactly";
    case OutcomeKind::UnresolvedWithinBudget: return "UnresolvedWithinBudget";
  }
  return "?";
}

struct Diagnostics {
  std::size_t target_support = 0;
  std::size_t residual_support = 0;
  std::size_t instances = 0;        // instances in the sector after expansion
  std::size_t used_instances = 0;   // instances reaching the target's component
  std::size_t rank = 0;
  std::size_t terms = 0;
  Budget budget;
};

struct CertifyOutcome {
  OutcomeKind kind = OutcomeKind::ZeroExactly;
  std::optional<Certificate> certificate;
  Diagnostics diagnostics;
};

namespace detail {

using SparseVec = std::vector<std::pair<std::size_t, Integer>>;

// a <- c1*a - c2*b
inline SparseVec combine(const SparseVec& a, const Integer& c1, const SparseVec& b, const Integer& c2) {
  SparseVec out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.emplace_back(a[i].first, c1 * a[i].second);
      ++i;
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, -c2 * b[j].second);
      ++j;
    } else {
      Integer v = c1 * a[i].second - c2 * b[j].second;
      if (v != 0) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

inline Integer content(const SparseVec& v) {
  Integer g = 0;
  for (const auto& [i, c] : v) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

// Basis vector j, in terms of its source instance and earlier basis vectors:
// b_j = own * R_instance + sum_k refs[k] * b_k.
struct BasisRow {
  SparseVec vec;
  std::size_t instance = 0;
  Rational own;
  std::vector<std::pair<std::size_t, Rational>> refs;
};

struct Echelon {
  std::vector<BasisRow> rows;
  std::unordered_map<std::size_t, std::size_t> pivot;  // term index -> row

  // Reduce v; tracked coefficients on basis rows are returned in `used`
  // so that v_in * scale = v_out + sum used[k] * b_k.
  SparseVec reduce(SparseVec v, Rational& scale, std::map<std::size_t, Rational>& used) const {
    while (!v.empty()) {
      auto it = pivot.find(v.front().first);
      if (it == pivot.end()) break;
      const BasisRow& b = rows[it->second];
      Integer g;
      mpz_gcd(g.get_mpz_t(), v.front().second.get_mpz_t(), b.vec.front().second.get_mpz_t());
      const Integer c1 = b.vec.front().second / g, c2 = v.front().second / g;
      v = combine(v, c1, b.vec, c2);
      scale *= Rational(c1);
      for (auto& [k, c] : used) c *= Rational(c1);
      used[it->second] += Rational(c2);
      Integer ct = content(v);
      if (ct > 1) {
        for (auto& [i, c] : v) c /= ct;
        scale /= Rational(ct);
        for (auto& [k, c] : used) c /= Rational(ct);
      }
    }
    return v;
  }

  void insert(const SparseVec& col, std::size_t instance) {
    Rational scale = 1;
    std::map<std::size_t, Rational> used;
    SparseVec v = reduce(col, scale, used);
    if (v.empty()) return;
    // scale * R = v + sum used_k b_k  =>  v = scale R - sum used_k b_k
    BasisRow row{std::move(v), instance, scale, {}};
    for (const auto& [k, c] : used)
      if (c != 0) row.refs.emplace_back(k, -c);
    pivot.emplace(row.vec.front().first, rows.size());
    rows.push_back(std::move(row));
  }
};

}  // namespace detail

/// Decide whether `target` lies in the span of the instances of `sys`.
inline CertifyOutcome certify_in_system(const FormalSum& target, const SectorSystem& sys) {
  CertifyOutcome out;
  out.diagnostics.budget = sys.budget;
  out.diagnostics.target_support = target.size();
  out.diagnostics.instances = sys.instances.size();
  out.diagnostics.terms = sys.terms.size();
  if (target.empty()) {
    out.kind = OutcomeKind::ZeroExactly;
    return out;
  }
  out.kind = OutcomeKind::UnresolvedWithinBudget;
  for (const auto& [t, c] : target)
    if (!sys.index.count(t)) {
      out.diagnostics.residual_support = target.size();
      return out;
    }

  // keep instances connected to the target through shared terms
  const std::size_t nt = sys.terms.size();
  std::vector<std::size_t> parent(nt);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& col : sys.columns)
    for (std::size_t k = 1; k < col.size(); ++k) {
      const std::size_t a = find(col[0].first), b = find(col[k].first);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::set<std::size_t> roots;
  for (const auto& [t, c] : target) roots.insert(find(sys.index.at(t)));
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < sys.columns.size(); ++i)
    if (!sys.columns[i].empty() && roots.count(find(sys.columns[i][0].first))) order.push_back(i);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return sys.columns[a].size() < sys.columns[b].size(); });
  out.diagnostics.used_instances = order.size();

  detail::Echelon ech;
  for (std::size_t i : order) ech.insert(sys.columns[i], i);
  out.diagnostics.rank = ech.rows.size();

  Rational scale = 1;
  std::map<std::size_t, Rational> used;
  detail::SparseVec residual = ech.reduce(detail::integer_column(target, sys.index), scale, used);
  // integer_column scaled the target by its denominator lcm
  Integer den = 1;
  for (const auto& [t, c] : target) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  if (!residual.empty()) {
    out.diagnostics.residual_support = residual.size();
    return out;
  }

  // den * target * scale = sum used_k b_k; back-substitute through the rows
  std::vector<Rational> y(ech.rows.size());
  for (const auto& [k, c] : used) y[k] = c / (scale * Rational(den));
  std::map<std::size_t, Rational> x;
  for (std::size_t k = ech.rows.size(); k-- > 0;) {
    if (y[k] == 0) continue;
    const auto& row = ech.rows[k];
    x[row.instance] += y[k] * row.own;
    for (const auto& [j, c] : row.refs) y[j] += y[k] * c;
  }
  Certificate cert;
  cert.target_hash = target_hash(target);
  for (const auto& [i, c] : x)
    if (c != 0) cert.entries.push_back(CertEntry{sys.instances[i], c});
  out.kind = OutcomeKind::Certified;
  out.certificate = std::move(cert);
  return out;
}

struct CertifyOptions {
  Budget budget;
  int jobs = 1;
  bool use_cache = true;
  std::optional<SectorSpec> sector;  // defaults to the target's own sector
};

inline CertifyOutcome certify_zero(const FormalSum& target, const CertifyOptions& opt = {}) {
  if (target.empty()) {
    CertifyOutcome out;
    out.kind = OutcomeKind::ZeroExactly;
    out.diagnostics.budget = opt.budget;
    return out;
  }
  const SectorSpec sec = opt.sector ? *opt.sector : sector_of(target);
  std::shared_ptr<const SectorSystem> sys =
      opt.use_cache ? system_cache().get(sec, opt.budget, opt.jobs) : build_system(sec, opt.budget, opt.jobs);
  return certify_in_system(target, *sys);
}

}  // namespace bamboo
