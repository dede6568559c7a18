#pragma once

#include "siegelkit/quadform.hpp"
#include "siegelkit/rational.hpp"

#include <optional>

namespace siegelkit::witness {

enum class Branch { kTwo, kThreeMod4, kFiveMod8, kOneMod8 };

const char* branch_name(Branch b);

/// Explicit ternary T1 > 0 with D(T1) = p, one construction per residue
/// branch of p; the p = 1 mod 8 branch (Schulze-Pillot) records its
/// auxiliary prime q and square root a.
struct WitnessRecord {
    Int p;
    Branch branch;
    std::optional<Int> q;  // Schulze-Pillot auxiliaries
    std::optional<Int> a;
    quadform::HalfIntegralForm form;
};

WitnessRecord ternary_witness(const Int& p);

/// T1 (+) s copies of the E8 block, n = 8s + 3; D is preserved.
quadform::HalfIntegralForm pad_witness(const quadform::HalfIntegralForm& t1, int n);

}  // namespace siegelkit::witness
