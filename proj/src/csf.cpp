#include "csft/csf.hpp"

#include <numeric>
#include <stdexcept>

#include "csft/tabloid.hpp"
#include "packed_partition.hpp"

namespace csft {

namespace {

void require_supported(int n) {
  if (n < 1 || n > kMaxVertices) {
    throw std::invalid_argument("trees with " + std::to_string(n) + " vertices are outside the supported range 1.." +
                                std::to_string(kMaxVertices));
  }
}

const packed::KeyIndex& key_index(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<packed::KeyIndex>> indices;
  std::lock_guard lock(mutex);
  auto& slot = indices[n];
  if (!slot) slot = std::make_unique<packed::KeyIndex>(PartitionCatalog::of(n));
  return *slot;
}

int parity_sign(int exponent) { return exponent % 2 == 0 ? 1 : -1; }

}  // namespace

// ---------------------------------------------------------------------------
// BTable

BTable::BTable(int n, std::vector<std::uint64_t> counts)
    : n_(n), catalog_(&PartitionCatalog::of(n)), counts_(std::move(counts)) {
  if (counts_.size() != catalog_->count()) {
    throw std::invalid_argument("b-table needs one count per partition of " + std::to_string(n));
  }
}

std::uint64_t BTable::at(const Partition& lambda) const {
  if (lambda.size() != n_) return 0;
  return counts_[catalog_->index_of(lambda)];
}

std::uint64_t BTable::total() const {
  return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

std::vector<Partition> BTable::missing_types() const {
  std::vector<Partition> out;
  for (std::size_t i = counts_.size(); i-- > 0;) {
    if (counts_[i] == 0) out.push_back(catalog_->at(i));
  }
  return out;
}

std::optional<Partition> BTable::first_missing() const {
  for (std::size_t i = counts_.size(); i-- > 0;) {
    if (counts_[i] == 0) return catalog_->at(i);
  }
  return std::nullopt;
}

nlohmann::json BTable::to_json() const {
  nlohmann::json entries = nlohmann::json::array();
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    const auto& parts = catalog_->at(i).parts();
    entries.push_back({{"partition", std::vector<int>(parts.begin(), parts.end())}, {"count", counts_[i]}});
  }
  return {{"n", n_}, {"counts", std::move(entries)}};
}

namespace {

nlohmann::json big_json(const BigInt& value) {
  if (value >= std::numeric_limits<std::int64_t>::min() && value <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(value);
  }
  return value.str();
}

std::vector<int> parts_vector(const Partition& lambda) {
  return std::vector<int>(lambda.parts().begin(), lambda.parts().end());
}

}  // namespace

SymPoly EposReport::as_sympoly() const {
  const int n = coefficients.empty() ? 0 : coefficients.begin()->first.size();
  SymPoly poly(Basis::E, n);
  for (const auto& [lambda, c] : coefficients) poly.add(lambda, Rational(c));
  return poly;
}

nlohmann::json EposReport::to_json() const {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& [lambda, c] : coefficients) {
    coeffs.push_back({{"partition", parts_vector(lambda)}, {"value", big_json(c)}});
  }
  nlohmann::json missing = nlohmann::json::array();
  for (const auto& lambda : missing_types) missing.push_back(parts_vector(lambda));
  nlohmann::json j = {{"e_positive", e_positive},
                      {"coefficients", std::move(coeffs)},
                      {"missing_types", std::move(missing)},
                      {"first_negative", nullptr}};
  if (first_negative) {
    j["first_negative"] = {{"partition", parts_vector(first_negative->first)},
                           {"value", big_json(first_negative->second)}};
  }
  return j;
}

BigInt SinkTable::total() const {
  BigInt sum = 0;
  for (const auto& s : sinks) sum += s;
  return sum;
}

nlohmann::json SinkTable::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t j = 1; j < sinks.size(); ++j) rows.push_back({{"j", j}, {"count", big_json(sinks[j])}});
  return {{"n", static_cast<int>(sinks.size()) - 1}, {"sinks", std::move(rows)}};
}

// ---------------------------------------------------------------------------
// WeightCache

WeightCache::WeightCache(int n)
    : catalog_(PartitionCatalog::of(n)),
      ready_(std::make_unique<std::once_flag[]>(catalog_.count())),
      terms_(std::make_unique<std::vector<Term>[]>(catalog_.count())) {}

const WeightCache& WeightCache::of(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<WeightCache>> caches;
  std::lock_guard lock(mutex);
  auto& slot = caches[n];
  if (!slot) slot = std::make_unique<WeightCache>(n);
  return *slot;
}

std::span<const WeightCache::Term> WeightCache::terms(std::size_t lambda_index) const {
  std::call_once(ready_[lambda_index], [&] {
    const Partition& lambda = catalog_.at(lambda_index);
    auto& out = terms_[lambda_index];
    for (const auto& mu : coarsenings(lambda)) {
      const BigInt w = weight_sum(lambda, mu);
      if (w > std::numeric_limits<std::int64_t>::max()) {
        throw std::overflow_error("brick tabloid weight exceeds 64 bits");
      }
      out.push_back({static_cast<std::uint32_t>(catalog_.index_of(mu)),
                     parity_sign(lambda.length() - mu.length()) * static_cast<std::int64_t>(w)});
    }
  });
  return terms_[lambda_index];
}

// ---------------------------------------------------------------------------
// Connected-partition counts

BTable b_table(const Tree& t) {
  const int n = t.size();
  require_supported(n);
  using packed::CountMap;
  using packed::Key;

  // Root at vertex 0; children are merged in adjacency order.
  std::vector<int> order{0};
  std::vector<int> parent(n, -1);
  parent[0] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (int w : t.neighbors(order[i])) {
      if (parent[w] == -1) {
        parent[w] = order[i];
        order.push_back(w);
      }
    }
  }

  std::vector<std::vector<CountMap::Entry>> state(n);
  CountMap scratch;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int v = *it;
    std::vector<CountMap::Entry> current{{packed::open(1), 1}};
    for (int c : t.neighbors(v)) {
      if (c == parent[v] || parent[c] != v) continue;
      const auto& child = state[c];
      scratch.reset(current.size() * child.size());
      for (const auto& [vk, vc] : current) {
        for (const auto& [ck, cc] : child) {
          const std::uint64_t ways = vc * cc;
          // Fuse the child's open block into ours.
          scratch.add(vk + ck, ways);
          // Or close it.
          const int child_open = packed::open_size(ck);
          scratch.add(vk + (ck & packed::kClosedMask) + packed::unit(child_open), ways);
        }
      }
      current = scratch.entries();
      std::vector<CountMap::Entry>().swap(state[c]);
    }
    state[v] = std::move(current);
  }

  const auto& index = key_index(n);
  std::vector<std::uint64_t> counts(PartitionCatalog::of(n).count(), 0);
  for (const auto& [key, count] : state[0]) {
    const Key closed = (key & packed::kClosedMask) + packed::unit(packed::open_size(key));
    counts[index.index_of(closed)] += count;
  }
  return BTable(n, std::move(counts));
}

BTable b_table_bruteforce(const Tree& t) {
  const int n = t.size();
  if (n > 24) throw std::invalid_argument("edge-subset enumeration is limited to 24 vertices");
  const auto edges = t.edges();
  const auto& index = key_index(n);
  std::vector<std::uint64_t> counts(PartitionCatalog::of(n).count(), 0);
  std::vector<int> root(n), size(n);
  const std::uint64_t subsets = std::uint64_t{1} << edges.size();
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    std::iota(root.begin(), root.end(), 0);
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (!(mask >> e & 1)) continue;
      int a = edges[e].first, b = edges[e].second;
      while (root[a] != a) a = root[a];
      while (root[b] != b) b = root[b];
      root[a] = b;
    }
    std::fill(size.begin(), size.end(), 0);
    for (int v = 0; v < n; ++v) {
      int r = v;
      while (root[r] != r) r = root[r];
      ++size[r];
    }
    packed::Key key = 0;
    for (int v = 0; v < n; ++v) {
      if (size[v]) key += packed::unit(size[v]);
    }
    ++counts[index.index_of(key)];
  }
  return BTable(n, std::move(counts));
}

SymPoly p_expansion(const BTable& b) {
  SymPoly poly(Basis::P, b.degree());
  for (std::size_t i = 0; i < b.counts().size(); ++i) {
    const Partition& lambda = b.catalog().at(i);
    poly.add(lambda, Rational(parity_sign(b.degree() - lambda.length()) * BigInt(b.at_index(i))));
  }
  return poly;
}

SymPoly p_expansion(const Tree& t) { return p_expansion(b_table(t)); }

// ---------------------------------------------------------------------------
// e-coefficients

namespace {

// |b| < 2^27 and each weight < 2^63 with at most p(28) terms, so the sum
// stays far inside 128 bits.
__int128 coefficient_at(const BTable& b, const WeightCache& cache, std::size_t lambda_index) {
  __int128 sum = 0;
  for (const auto& term : cache.terms(lambda_index)) {
    sum += static_cast<__int128>(term.signed_weight) * static_cast<__int128>(b.at_index(term.mu));
  }
  return sum;
}

}  // namespace

BigInt e_coefficient(const BTable& b, const Partition& lambda) {
  if (lambda.size() != b.degree()) {
    throw std::invalid_argument(lambda.to_string() + " is not a partition of " + std::to_string(b.degree()));
  }
  const auto& cache = WeightCache::of(b.degree());
  return from_int128(coefficient_at(b, cache, cache.catalog().index_of(lambda)));
}

BigInt e_coefficient(const Tree& t, const Partition& lambda) { return e_coefficient(b_table(t), lambda); }

std::optional<Partition> probe_partition(int n) {
  if (n < 2) return std::nullopt;
  std::vector<int> parts;
  if (n % 2 == 1) parts.push_back(3);
  parts.insert(parts.end(), (n % 2 == 1 ? n - 3 : n) / 2, 2);
  return Partition(std::move(parts));
}

std::optional<std::pair<Partition, BigInt>> first_negative(const BTable& b) {
  const auto& cache = WeightCache::of(b.degree());
  const auto& catalog = cache.catalog();
  std::optional<std::size_t> probe;
  if (auto p = probe_partition(b.degree())) {
    probe = catalog.index_of(*p);
    const __int128 c = coefficient_at(b, cache, *probe);
    if (c < 0) return std::make_pair(catalog.at(*probe), from_int128(c));
  }
  for (std::size_t i = 0; i < catalog.count(); ++i) {
    if (probe && i == *probe) continue;
    const __int128 c = coefficient_at(b, cache, i);
    if (c < 0) return std::make_pair(catalog.at(i), from_int128(c));
  }
  return std::nullopt;
}

EposReport e_expansion(const BTable& b) {
  const auto& cache = WeightCache::of(b.degree());
  const auto& catalog = cache.catalog();
  EposReport report;
  for (std::size_t i = 0; i < catalog.count(); ++i) {
    report.coefficients.emplace(catalog.at(i), from_int128(coefficient_at(b, cache, i)));
  }
  report.first_negative = first_negative(b);
  report.e_positive = !report.first_negative.has_value();
  report.missing_types = b.missing_types();
  return report;
}

EposReport e_expansion(const Tree& t) { return e_expansion(b_table(t)); }

SymPoly e_expansion_via_p(const Tree& t) { return p_to_e(p_expansion(t)); }

BigInt positivity_threshold(const BTable& b, const Partition& lambda) {
  const auto& cache = WeightCache::of(b.degree());
  const auto& catalog = cache.catalog();
  const std::size_t self = catalog.index_of(lambda);
  // Terms with l(mu) < l(lambda), sign flipped relative to the coefficient.
  BigInt numerator = 0;
  for (const auto& term : cache.terms(self)) {
    if (term.mu == self) continue;
    numerator -= BigInt(term.signed_weight) * BigInt(b.at_index(term.mu));
  }
  const BigInt denominator = lambda.part_product();
  BigInt quotient = numerator / denominator;  // truncates toward zero
  if (numerator > 0 && quotient * denominator != numerator) quotient += 1;
  return quotient;
}

// ---------------------------------------------------------------------------
// Sinks

BigInt sink_count(const BTable& b, int j) {
  const auto& cache = WeightCache::of(b.degree());
  const auto& catalog = cache.catalog();
  __int128 sum = 0;
  for (std::size_t i = 0; i < catalog.count(); ++i) {
    if (catalog.at(i).length() == j) sum += coefficient_at(b, cache, i);
  }
  return from_int128(sum);
}

SinkTable sink_counts(const BTable& b) {
  const auto& cache = WeightCache::of(b.degree());
  const auto& catalog = cache.catalog();
  std::vector<__int128> sums(b.degree() + 1, 0);
  for (std::size_t i = 0; i < catalog.count(); ++i) sums[catalog.at(i).length()] += coefficient_at(b, cache, i);
  SinkTable table;
  for (auto s : sums) table.sinks.push_back(from_int128(s));
  return table;
}

SinkTable sink_counts(const Tree& t) { return sink_counts(b_table(t)); }

SinkTable sink_counts_bruteforce(const Tree& t) {
  const int n = t.size();
  if (n > 22) throw std::invalid_argument("orientation enumeration is limited to 22 vertices");
  const auto edges = t.edges();
  std::vector<std::uint64_t> tally(n + 1, 0);
  std::vector<int> out_degree(n);
  const std::uint64_t orientations = std::uint64_t{1} << edges.size();
  for (std::uint64_t mask = 0; mask < orientations; ++mask) {
    std::fill(out_degree.begin(), out_degree.end(), 0);
    for (std::size_t e = 0; e < edges.size(); ++e) {
      ++out_degree[(mask >> e & 1) ? edges[e].first : edges[e].second];
    }
    ++tally[std::count(out_degree.begin(), out_degree.end(), 0)];
  }
  SinkTable table;
  for (auto c : tally) table.sinks.emplace_back(c);
  return table;
}

// ---------------------------------------------------------------------------
// (s, t^k) coefficients

namespace {

void require_stk_shape(const BTable& b, int s, int t, int k) {
  if (s < 2 || t < 2 || k < 0) throw std::invalid_argument("need s, t >= 2 and k >= 0");
  if (s + k * t != b.degree()) {
    throw std::invalid_argument("s + k t = " + std::to_string(s + k * t) + " does not match n = " +
                                std::to_string(b.degree()));
  }
}

// b_{(head, t*lambda)} summed with sign (-1)^{k-l} t^l over lambda |- m.
__int128 scaled_sum(const BTable& b, int head, int t, int m, int k) {
  __int128 sum = 0;
  for (const auto& lambda : PartitionCatalog::of(m).partitions()) {
    std::vector<int> parts{head};
    for (int p : lambda.parts()) parts.push_back(t * p);
    __int128 power = 1;
    for (int i = 0; i < lambda.length(); ++i) power *= t;
    sum += parity_sign(k - lambda.length()) * power * static_cast<__int128>(b.at(Partition(std::move(parts))));
  }
  return sum;
}

}  // namespace

BigInt coefficient_stk(const BTable& b, int s, int t, int k) {
  require_stk_shape(b, s, t, k);
  const bool coprime = std::gcd(s, t) == 1;
  const bool dominant = s > k * t;
  const bool multiple = t % s == 0 && t / s >= 2;
  if (!coprime && !dominant && !multiple) {
    throw std::invalid_argument("(s,t) must be coprime, or satisfy s > k t or t = m s with m >= 2");
  }
  __int128 sum = 0;
  for (int i = 0; i <= k; ++i) sum += static_cast<__int128>(s + i * t) * scaled_sum(b, s + i * t, t, k - i, k);
  return from_int128(sum);
}

BigInt reduced_stk_sum(const BTable& b, int s, int t, int k) {
  require_stk_shape(b, s, t, k);
  if (std::gcd(s, t) != 1 && s <= k * t) {
    throw std::invalid_argument("the reduced sum needs (s,t) coprime or s > k t");
  }
  return from_int128(scaled_sum(b, s, t, k, k));
}

}  // namespace csft
