#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cama {

// Text-embedding provider: deterministic, fixed-dimension,
// unit-normalized vectors (the zero vector stands in for token-free
// text). A neural provider can plug in behind this interface; the
// default is the lexical embedder below.
class Embedder {
 public:
  virtual ~Embedder() = default;
  virtual std::vector<float> embed(const std::string& text) const = 0;
  virtual std::size_t dim() const = 0;
};

// Hashed bag-of-tokens: lowercase, split into alphanumeric runs, hash
// each token into one of `dim` buckets with a fixed seed, count, then
// L2-normalize (accumulating in double).
class HashedBagEmbedder final : public Embedder {
 public:
  static constexpr std::size_t kDim = 512;
  static constexpr std::uint64_t kSeed = 0x9e3779b97f4a7c15ull;

  explicit HashedBagEmbedder(std::size_t dim = kDim,
                             std::uint64_t seed = kSeed);

  std::vector<float> embed(const std::string& text) const override;
  std::size_t dim() const override { return dim_; }

  // The bucket a single token hashes to; lets tests verify that the
  // vocabulary they reason about has no collisions at this seed.
  std::size_t bucket(std::string_view token) const;

 private:
  std::size_t dim_;
  std::uint64_t seed_;
};

// Process-wide default embedder (dimension 512, fixed seed).
const Embedder& default_embedder();

// Dot product via the active SIMD kernel. Both vectors must have equal
// size (else InvalidConfig); for unit-normalized inputs this is the
// cosine similarity.
double cosine(const std::vector<float>& a, const std::vector<float>& b);

}  // namespace cama
