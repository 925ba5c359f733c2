#include "cama/embedder.hpp"

#include <cctype>
#include <cmath>

#include "cama/errors.hpp"
#include "cama/fnv.hpp"
#include "cama/simd.hpp"

namespace cama {

HashedBagEmbedder::HashedBagEmbedder(std::size_t dim, std::uint64_t seed)
    : dim_(dim), seed_(seed) {
  if (dim_ == 0) throw InvalidConfig("embedder dimension must be positive");
}

std::size_t HashedBagEmbedder::bucket(std::string_view token) const {
  return static_cast<std::size_t>(fnv1a64(token, fnv1a64_u64(seed_)) % dim_);
}

std::vector<float> HashedBagEmbedder::embed(const std::string& text) const {
  std::vector<double> counts(dim_, 0.0);
  std::string token;
  bool any = false;
  auto flush = [&] {
    if (token.empty()) return;
    counts[bucket(token)] += 1.0;
    any = true;
    token.clear();
  };
  for (char c : text) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      token.push_back(static_cast<char>(
          std::tolower(static_cast<unsigned char>(c))));
    } else {
      flush();
    }
  }
  flush();

  std::vector<float> out(dim_, 0.0f);
  if (!any) return out;
  double norm_sq = 0.0;
  for (double c : counts) norm_sq += c * c;
  const double norm = std::sqrt(norm_sq);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (counts[i] != 0.0) out[i] = static_cast<float>(counts[i] / norm);
  }
  return out;
}

const Embedder& default_embedder() {
  static const HashedBagEmbedder instance;
  return instance;
}

double cosine(const std::vector<float>& a, const std::vector<float>& b) {
  if (a.size() != b.size()) {
    throw InvalidConfig("cosine: vector sizes differ (" +
                        std::to_string(a.size()) + " vs " +
                        std::to_string(b.size()) + ")");
  }
  if (a.empty()) return 0.0;
  return dot(a.data(), b.data(), a.size());
}

}  // namespace cama
