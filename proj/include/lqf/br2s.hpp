#pragma once

#include "lqf/localfield.hpp"

namespace lqf {

/// Element (chi, x) of the little graded Brauer group Br2(F)_s.
struct Br2sElem {
    SquareClass chi;
    int x = 0;

    friend bool operator==(const Br2sElem& a, const Br2sElem& b) { return a.chi == b.chi && a.x == b.x; }
    friend bool operator!=(const Br2sElem& a, const Br2sElem& b) { return !(a == b); }
};

inline int cup(const GroundField& F, SquareClass a, SquareClass b) { return hilbert(F, a, b) == -1 ? 1 : 0; }

/// Local symbol {chi, b}.
inline int symbol(const GroundField& F, SquareClass chi, const FieldElem& b) {
    return cup(F, chi, square_class(F, b));
}

inline Br2sElem br2s_zero() { return {}; }

/// z = (-1, 0), the class of a hyperbolic plane's SW invariant.
inline Br2sElem br2s_z(const GroundField& F) { return {class_of(F, -1), 0}; }

inline Br2sElem br2s_add(const GroundField& F, const Br2sElem& a, const Br2sElem& b) {
    return {a.chi * b.chi, (a.x + b.x + cup(F, a.chi, b.chi)) & 1};
}

inline Br2sElem br2s_neg(const GroundField& F, const Br2sElem& a) {
    return {a.chi, (a.x + cup(F, a.chi, a.chi)) & 1};
}

inline Br2sElem br2s_sub(const GroundField& F, const Br2sElem& a, const Br2sElem& b) {
    return br2s_add(F, a, br2s_neg(F, b));
}

inline Br2sElem br2s_mul(const GroundField& F, long long n, const Br2sElem& a) {
    Br2sElem acc{};
    Br2sElem step = n >= 0 ? a : br2s_neg(F, a);
    for (long long k = 0; k < (n >= 0 ? n : -n); ++k) acc = br2s_add(F, acc, step);
    return acc;
}

/// Field-checked variants for values carrying their own field.
struct TaggedBr2s {
    GroundField field;
    Br2sElem value;
};

inline TaggedBr2s br2s_add(const TaggedBr2s& a, const TaggedBr2s& b) {
    require_same(a.field, b.field);
    return {a.field, br2s_add(a.field, a.value, b.value)};
}

inline TaggedBr2s br2s_sub(const TaggedBr2s& a, const TaggedBr2s& b) {
    require_same(a.field, b.field);
    return {a.field, br2s_sub(a.field, a.value, b.value)};
}

inline nlohmann::json to_json(const GroundField& F, const Br2sElem& e) {
    return {{"chi", class_code(F, e.chi)}, {"x", e.x}};
}

inline Br2sElem br2s_from_json(const GroundField& F, const nlohmann::json& j) {
    return {class_from_code(F, j.at("chi")), j.at("x").get<int>() & 1};
}

inline std::string br2s_str(const GroundField& F, const Br2sElem& e) {
    return "(" + class_name(F, e.chi) + "," + std::to_string(e.x) + ")";
}

} // namespace lqf
