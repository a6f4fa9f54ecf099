#include "ddop/modem.hpp"

#include <algorithm>
#include <cmath>

namespace ddop {
namespace {

int side_length(int order) {
  switch (order) {
    case 4: return 2;
    case 16: return 4;
    case 64: return 8;
    default: throw std::invalid_argument("qam: order must be 4, 16 or 64");
  }
}

unsigned gray_to_binary(unsigned g) {
  unsigned b = g;
  while (g >>= 1) b ^= g;
  return b;
}

unsigned binary_to_gray(unsigned b) { return b ^ (b >> 1); }

// Level index 0..L-1 maps to amplitude 2i - (L-1).
double axis_level(unsigned index, int L) { return 2.0 * index - (L - 1); }

unsigned nearest_index(double amplitude, int L) {
  const double i = std::round((amplitude + (L - 1)) / 2.0);
  return static_cast<unsigned>(std::clamp(i, 0.0, static_cast<double>(L - 1)));
}

}  // namespace

int bits_per_symbol(int order) {
  const int L = side_length(order);
  int b = 0;
  while ((1 << b) < L) ++b;
  return 2 * b;
}

ComplexVector<double> qam_map(std::span<const std::uint8_t> bits, int order) {
  const int L = side_length(order);
  const int k = bits_per_symbol(order);
  const int half = k / 2;
  if (bits.size() % static_cast<std::size_t>(k) != 0) {
    throw std::invalid_argument("qam_map: bit count is not a multiple of log2(order)");
  }
  const double norm = std::sqrt(2.0 * (L * L - 1) / 3.0);
  ComplexVector<double> out(static_cast<Index>(bits.size() / k));
  for (Index s = 0; s < out.size(); ++s) {
    unsigned gi = 0, gq = 0;
    for (int b = 0; b < half; ++b) {
      gi = (gi << 1) | (bits[s * k + b] & 1u);
      gq = (gq << 1) | (bits[s * k + half + b] & 1u);
    }
    out[s] = {axis_level(gray_to_binary(gi), L) / norm, axis_level(gray_to_binary(gq), L) / norm};
  }
  return out;
}

std::vector<std::uint8_t> qam_demap(const ComplexVector<double>& symbols, int order) {
  const int L = side_length(order);
  const int k = bits_per_symbol(order);
  const int half = k / 2;
  const double norm = std::sqrt(2.0 * (L * L - 1) / 3.0);
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(symbols.size()) * k);
  for (Index s = 0; s < symbols.size(); ++s) {
    const unsigned gi = binary_to_gray(nearest_index(symbols[s].real() * norm, L));
    const unsigned gq = binary_to_gray(nearest_index(symbols[s].imag() * norm, L));
    for (int b = 0; b < half; ++b) {
      bits[s * k + b] = (gi >> (half - 1 - b)) & 1u;
      bits[s * k + half + b] = (gq >> (half - 1 - b)) & 1u;
    }
  }
  return bits;
}

Frame<double> random_qpsk_frame(int M, int N, std::uint64_t seed) {
  if (M < 1 || N < 1) throw std::invalid_argument("random_qpsk_frame: M and N must be >= 1");
  std::mt19937_64 rng(seed);
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(2 * M * N));
  for (auto& b : bits) b = static_cast<std::uint8_t>(rng() >> 63);
  const auto symbols = qam_map(bits, 4);
  Frame<double> X(M, N);
  for (int m = 0; m < M; ++m)
    for (int n = 0; n < N; ++n) X(m, n) = symbols[static_cast<Index>(m) * N + n];
  return X;
}

}  // namespace ddop
