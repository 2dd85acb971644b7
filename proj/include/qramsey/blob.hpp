#pragma once

// Constructive form of the generalized blob lemma: from a coloring of Q_N
// satisfying the layer hypotheses, build either a blue copy of Q_n or a red
// copy of Q_m.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qramsey/coloring.hpp"
#include "qramsey/copies.hpp"

namespace qramsey {

struct BlobSpec {
    int ground = 0;   // N
    int n = 0;        // dimension of the blue target
    int n_prime = 0;  // base injection lands in Q_{n'}
    int m = 0;        // dimension of the red target
    int a = 0;        // bottom layers of Q_n whose base images must be blue
    int b = 0;        // top layers of Q_n whose lifted images must be blue
    std::vector<ElementSet> partition;          // X_1..X_k covering [N] \ [n']
    std::vector<std::uint64_t> base_injection;  // index: subset of [n]; value: subset of [n']

    int blocks() const noexcept { return n + 1 - a - b; }
    /// [N] \ [n'] as bits.
    std::uint64_t outside() const noexcept { return full_mask(ground) & ~full_mask(n_prime); }

    /// Throws ArgumentError naming the first broken structural invariant.
    void validate() const;

    static std::vector<std::uint64_t> identity_injection(int n);
};

enum class BlobTag { BlueCopy, RedCopy };
std::string_view to_string(BlobTag tag) noexcept;

struct BlobOutcome {
    BlobTag tag = BlobTag::BlueCopy;
    CopyCert cert;
};

/// Bottom a layers (levels 0..a-1) map to blue sets, and for the top b
/// layers (levels n-b+1..n) i(S) ∪ ([N] \ [n']) is blue.
bool check_hypotheses(const BlobSpec& spec, const Coloring& c);

/// Levels a..n-b are placed one at a time. With P the union of the blocks
/// consumed so far, a level whose sets all have i(S) ∪ P blue is placed
/// there directly. Otherwise it consumes the next block X: each S takes the
/// lowest blue element (ties: smallest encoding) of [i(S) ∪ P, i(S) ∪ P ∪ X];
/// if that interval is entirely red, a red Q_m is read off it using the m
/// smallest elements of X as coordinates.
///
/// Throws ContractError when the hypotheses fail and DefectError if the
/// result does not verify.
BlobOutcome blob_embed(const BlobSpec& spec, const Coloring& c);

struct AutoSpec {
    std::optional<BlobSpec> spec;
    std::string reason;  // why no spec, when absent
};

/// Tries n' = n, the identity base injection, and consecutive blocks of m
/// elements after [n] (the last block takes the remainder).
AutoSpec auto_spec(int n_ground, int n, int m, int a, int b, const Coloring& c);

}  // namespace qramsey
