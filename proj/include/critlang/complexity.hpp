#pragma once
// Compression proxy for Kolmogorov complexity.  The codec is a two-part MDL
// code: pick a block size b, transmit the codebook of distinct b-blocks raw,
// then price the token stream with a Krichevsky-Trofimov mixture over
// codebook indices.  Minimizing the total over b gives a description length
// that is near len*log2(q) bits on incompressible strings and near R per
// symbol on concatenations drawn from a rate-R code, which is exactly the
// range the complexity ordering needs to resolve.

#include <cstdint>
#include <span>
#include <vector>

#include "critlang/codes.hpp"

namespace critlang {

inline constexpr const char* kCompressorVersion = "blockdict-kt-1";

struct ProxyConfig {
  int block_max = 256;   // largest block size tried
  int min_length = 16;   // below this the header dominates; flag the result
};

struct ProxyResult {
  double kappa;         // compressed bits / (len * log2 q), may exceed 1
  bool low_confidence;  // true for strings shorter than min_length
};

// total description length in bits at the best block size
double compressed_bits(std::span<const std::uint8_t> symbols, int q,
                       int block_max = ProxyConfig{}.block_max);

ProxyResult proxy_complexity(std::span<const std::uint8_t> symbols, int q,
                             const ProxyConfig& cfg = {});
ProxyResult proxy_complexity(const Word& w, int q, const ProxyConfig& cfg = {});

// one proxy per word; OpenMP-parallel, order matches input
std::vector<ProxyResult> batch_proxies(const std::vector<Word>& words, int q,
                                       const ProxyConfig& cfg = {}, int threads = 0);
std::vector<ProxyResult> batch_proxies_serial(const std::vector<Word>& words, int q,
                                              const ProxyConfig& cfg = {});

struct KolmogorovOrder {
  std::vector<Word> words;            // input order
  std::vector<double> kappas;         // input order
  std::vector<std::uint32_t> ranking; // ranking[r] = input index of rank r
  // clusters partition ranks into maximal runs of equal complexity under the
  // tolerance below; stored as [first, last) rank ranges
  std::vector<std::pair<std::uint32_t, std::uint32_t>> clusters;
  double tolerance;
};

// stable sort by (kappa, word lexicographic); ties beyond that keep input order
KolmogorovOrder kolmogorov_order(const std::vector<Word>& words, int q,
                                 const ProxyConfig& cfg = {}, double tau = 0.01,
                                 int threads = 0);

struct NeighborGraph {
  int n_neighbors;
  std::vector<std::vector<std::uint32_t>> adj;  // by rank, sorted, symmetric
};

// mutual k-nearest-neighbor graph in the ordering: each word's candidates are
// the N nearest ranks inside its own cluster when the cluster has more than N
// members, otherwise the N nearest in the whole ordering; an edge survives
// only if both endpoints propose it, so degrees never exceed N.  N must be
// one of {4, 6, 8} (the word lattice dimensions the bound machinery accepts).
NeighborGraph neighbor_graph(const KolmogorovOrder& order, int N, double tau = 0.01);

}  // namespace critlang
