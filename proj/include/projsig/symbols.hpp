#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace projsig {

// Global symbol table. The declaration order below IS the term-order
// precedence used everywhere (graded lex ties broken by it), so polynomial
// canonical forms are stable across the whole artifact.
enum class Sym : uint8_t {
    t = 0,   // planar-curve parameter
    s,       // spatial-curve / family parameter
    x,       // planar coordinates
    y,
    kappa,   // signature plane coordinates
    tau,
    c1, c2, c3, // central-family translation parameters
    a1, a2,     // parallel-family slope parameters
    b,          // parallel shear parameter
    y1, y2, y3, y4, y5, y6, y7, y8, // jet coordinates: y^(k) = d^k y / dx^k
    COUNT
};

inline constexpr std::size_t NVARS = static_cast<std::size_t>(Sym::COUNT);

inline constexpr std::array<std::string_view, NVARS> SYM_NAMES = {
    "t", "s", "x", "y", "kappa", "tau", "c1", "c2", "c3", "a1", "a2", "b",
    "y1", "y2", "y3", "y4", "y5", "y6", "y7", "y8"};

// Jet coordinate y^(k) for 1 <= k <= 8.
inline Sym jet_sym(int k) {
    if (k < 1 || k > 8) throw std::invalid_argument("jet order out of range");
    return static_cast<Sym>(static_cast<int>(Sym::y1) + (k - 1));
}

inline std::string_view name(Sym v) { return SYM_NAMES[static_cast<std::size_t>(v)]; }

inline Sym sym_from_name(std::string_view text) {
    for (std::size_t i = 0; i < NVARS; ++i)
        if (SYM_NAMES[i] == text) return static_cast<Sym>(i);
    throw std::invalid_argument("unknown symbol '" + std::string(text) + "'");
}

inline constexpr std::size_t idx(Sym v) { return static_cast<std::size_t>(v); }

} // namespace projsig
