#include "critlang/complexity.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace critlang {

// Elias-gamma length of a positive integer
static double gamma_bits(std::uint64_t k) {
  return 2.0 * static_cast<double>(std::bit_width(k) - 1) + 1.0;
}

static double block_cost(std::span<const std::uint8_t> sym, int q, std::size_t b) {
  std::size_t ntok = sym.size() / b;
  std::size_t rem = sym.size() - ntok * b;
  double lq = std::log2(static_cast<double>(q));

  std::unordered_map<std::string, std::size_t> book;
  std::vector<double> counts;
  double bits = 0.0, total = 0.0;
  std::string key;
  for (std::size_t t = 0; t < ntok; ++t) {
    key.assign(reinterpret_cast<const char*>(sym.data() + t * b), b);
    auto [it, fresh] = book.try_emplace(key, counts.size());
    if (fresh) counts.push_back(0.0);
    // KT mixture over the codebook; the denominator tracks the running
    // distinct count so the pricing stays strictly one-pass
    double d = static_cast<double>(counts.size());
    double p = (counts[it->second] + 0.5) / (total + 0.5 * d);
    bits -= std::log2(p);
    counts[it->second] += 1.0;
    total += 1.0;
  }
  double distinct = static_cast<double>(counts.size());
  double header = gamma_bits(b) + gamma_bits(counts.size() + 1) +
                  distinct * static_cast<double>(b) * lq;
  return header + bits + static_cast<double>(rem) * lq;
}

double compressed_bits(std::span<const std::uint8_t> symbols, int q, int block_max) {
  if (q < 2) throw std::invalid_argument("compressed_bits: q must be >= 2");
  if (symbols.empty()) throw std::invalid_argument("compressed_bits: empty string");
  if (block_max < 1) throw std::invalid_argument("compressed_bits: block_max must be >= 1");
  for (auto s : symbols)
    if (s >= q) throw std::invalid_argument("compressed_bits: symbol outside alphabet");
  std::size_t bmax = std::min<std::size_t>(block_max, symbols.size());
  double best = block_cost(symbols, q, 1);
  for (std::size_t b = 2; b <= bmax; ++b) best = std::min(best, block_cost(symbols, q, b));
  return best;
}

ProxyResult proxy_complexity(std::span<const std::uint8_t> symbols, int q,
                             const ProxyConfig& cfg) {
  double bits = compressed_bits(symbols, q, cfg.block_max);
  double kappa = bits / (static_cast<double>(symbols.size()) *
                         std::log2(static_cast<double>(q)));
  return {kappa, static_cast<int>(symbols.size()) < cfg.min_length};
}

ProxyResult proxy_complexity(const Word& w, int q, const ProxyConfig& cfg) {
  return proxy_complexity(std::span<const std::uint8_t>(w.letters()), q, cfg);
}

std::vector<ProxyResult> batch_proxies(const std::vector<Word>& words, int q,
                                       const ProxyConfig& cfg, int threads) {
  std::vector<ProxyResult> out(words.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) \
    num_threads(threads > 0 ? threads : omp_get_max_threads())
#endif
  for (long long i = 0; i < static_cast<long long>(words.size()); ++i)
    out[static_cast<std::size_t>(i)] =
        proxy_complexity(words[static_cast<std::size_t>(i)], q, cfg);
  return out;
}

std::vector<ProxyResult> batch_proxies_serial(const std::vector<Word>& words, int q,
                                              const ProxyConfig& cfg) {
  std::vector<ProxyResult> out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back(proxy_complexity(w, q, cfg));
  return out;
}

static std::vector<std::pair<std::uint32_t, std::uint32_t>> cluster_ranks(
    const std::vector<double>& sorted_kappas, double tau) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> clusters;
  std::uint32_t n = static_cast<std::uint32_t>(sorted_kappas.size());
  std::uint32_t first = 0;
  for (std::uint32_t r = 1; r <= n; ++r) {
    // a run breaks when the next value drifts more than tau from the run head
    if (r == n || sorted_kappas[r] - sorted_kappas[first] > tau) {
      clusters.emplace_back(first, r);
      first = r;
    }
  }
  return clusters;
}

KolmogorovOrder kolmogorov_order(const std::vector<Word>& words, int q,
                                 const ProxyConfig& cfg, double tau, int threads) {
  if (words.empty()) throw std::invalid_argument("kolmogorov_order: no words");
  if (tau < 0) throw std::invalid_argument("kolmogorov_order: tau must be >= 0");
  KolmogorovOrder order;
  order.words = words;
  order.tolerance = tau;
  auto proxies = batch_proxies(words, q, cfg, threads);
  order.kappas.reserve(words.size());
  for (const auto& p : proxies) order.kappas.push_back(p.kappa);

  order.ranking.resize(words.size());
  std::iota(order.ranking.begin(), order.ranking.end(), 0u);
  std::stable_sort(order.ranking.begin(), order.ranking.end(),
                   [&](std::uint32_t a, std::uint32_t b) {
                     if (order.kappas[a] != order.kappas[b])
                       return order.kappas[a] < order.kappas[b];
                     return words[a].letters() < words[b].letters();
                   });

  std::vector<double> sorted_kappas(words.size());
  for (std::size_t r = 0; r < words.size(); ++r)
    sorted_kappas[r] = order.kappas[order.ranking[r]];
  order.clusters = cluster_ranks(sorted_kappas, tau);
  return order;
}

NeighborGraph neighbor_graph(const KolmogorovOrder& order, int N, double tau) {
  if (N != 4 && N != 6 && N != 8)
    throw std::invalid_argument("neighbor_graph: N must be 4, 6 or 8");
  std::uint32_t n = static_cast<std::uint32_t>(order.ranking.size());

  std::vector<double> sorted_kappas(n);
  for (std::uint32_t r = 0; r < n; ++r) sorted_kappas[r] = order.kappas[order.ranking[r]];
  auto clusters = tau == order.tolerance ? order.clusters : cluster_ranks(sorted_kappas, tau);

  // pool per rank: its cluster when that holds more than N words, else all
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pool(n);
  for (auto [lo, hi] : clusters)
    for (std::uint32_t r = lo; r < hi; ++r)
      pool[r] = (hi - lo >= static_cast<std::uint32_t>(N) + 1)
                    ? std::make_pair(lo, hi)
                    : std::make_pair(0u, n);

  // N nearest ranks inside the pool, two-pointer walk, closer-then-lower-rank
  std::vector<std::vector<std::uint32_t>> cand(n);
  for (std::uint32_t r = 0; r < n; ++r) {
    auto [lo, hi] = pool[r];
    std::int64_t left = static_cast<std::int64_t>(r) - 1;
    std::uint32_t right = r + 1;
    while (cand[r].size() < static_cast<std::size_t>(N)) {
      bool has_left = left >= static_cast<std::int64_t>(lo);
      bool has_right = right < hi;
      if (!has_left && !has_right) break;
      std::uint32_t dl = has_left ? r - static_cast<std::uint32_t>(left) : ~0u;
      std::uint32_t dr = has_right ? right - r : ~0u;
      if (dl <= dr)
        cand[r].push_back(static_cast<std::uint32_t>(left--));
      else
        cand[r].push_back(right++);
    }
    std::sort(cand[r].begin(), cand[r].end());
  }

  NeighborGraph g{N, std::vector<std::vector<std::uint32_t>>(n)};
  for (std::uint32_t r = 0; r < n; ++r) {
    for (std::uint32_t c : cand[r]) {
      if (c <= r) continue;
      if (std::binary_search(cand[c].begin(), cand[c].end(), r)) {
        g.adj[r].push_back(c);
        g.adj[c].push_back(r);
      }
    }
  }
  for (auto& a : g.adj) std::sort(a.begin(), a.end());
  return g;
}

}  // namespace critlang
