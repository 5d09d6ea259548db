#ifndef ZETAREG_FFIELD_HPP
#define ZETAREG_FFIELD_HPP

#include <memory>
#include <vector>

#include "zetareg/rational.hpp"

namespace zetareg {

// Description of F_{p^e}. The modulus is the lexicographically least monic
// irreducible of degree e over F_p (coefficient vectors compared
// low-degree-first), so construction is a pure function of (p, e).
struct FieldDesc {
    unsigned long p;
    unsigned e;
    std::vector<unsigned long> modulus; // length e+1, low-degree-first, monic

    Int cardinality() const { return ipow(Int(static_cast<long>(p)), e); }
};

using FieldRef = std::shared_ptr<const FieldDesc>;

// Element of F_{p^e}: residue vector of length e, entries in [0, p).
struct FFElem {
    FieldRef field;
    std::vector<unsigned long> coeffs;

    bool is_zero() const;
    bool operator==(const FFElem& o) const;
};

FieldRef build_field(unsigned long p, unsigned e);

FFElem ff_zero(const FieldRef& f);
FFElem ff_one(const FieldRef& f);
// Element from its scalar encoding in [0, p^e): base-p digits give the
// coefficient vector, digit 0 = constant term.
FFElem ff_from_scalar(const FieldRef& f, unsigned long long scalar);

FFElem ff_add(const FFElem& a, const FFElem& b);
FFElem ff_neg(const FFElem& a);
FFElem ff_sub(const FFElem& a, const FFElem& b);
FFElem ff_mul(const FFElem& a, const FFElem& b);
FFElem ff_inv(const FFElem& a);
FFElem ff_pow(const FFElem& a, unsigned long long n);

// Element at position `index` of the deterministic enumeration order
// (coefficient-vector lexicographic, constant term most significant).
FFElem ff_element_at(const FieldRef& f, unsigned long long index);

// All p^e elements in enumeration order; throws BudgetExceeded if the field
// is larger than the global enumeration budget.
std::vector<FFElem> ff_enumerate(const FieldRef& f);

} // namespace zetareg

#endif
