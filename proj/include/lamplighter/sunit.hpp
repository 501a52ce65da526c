#pragma once

#include "lamplighter/digitset.hpp"
#include "lamplighter/fraction.hpp"
#include "lamplighter/modcalc.hpp"

namespace lamp {

// Equation X^{z_1} c_1 + ... + X^{z_m} c_m = c_0 in M = R^d/N, solved for
// (z_1..z_m) in (Z^n)^m, optionally under linear side constraints on the
// flattened solution vector.
struct SUnitInstance {
    ModulePresentation module;
    std::vector<ModElem> constants;  // c_1..c_m
    ModElem c0;

    std::vector<IntVec> constraint_rows;  // over Z^{n*m}
    IntVec constraint_rhs;
    std::vector<Congruence> congruences;

    std::vector<std::vector<ModElem>> hint;  // optional decomposition hint

    uint32_t blocks() const { return static_cast<uint32_t>(constants.size()); }
    uint32_t dim() const { return module.ring->nvars * blocks(); }
};

struct SUnitOptions {
    uint32_t kernel_depth = 18;
    size_t max_states = 4000;
    int64_t component_check_window = 2;
    int64_t verify_window = 6;
    size_t verify_limit = 4000000;  // max brute points for self checks
    uint32_t signature_depth = 3;
    int retries = 1;
};

struct ComponentReport {
    std::string origin;
    std::string backend;
    bool closed = false;
    bool primary_assumed = false;
    SolveStatus status = SolveStatus::exact();
    std::string detail;
};

struct SUnitResult {
    bool ok = false;
    std::string error;
    DigitAutomaton solutions;  // over Z^{n*m}
    SolveStatus status = SolveStatus::exact();
    bool decomposition_verified = true;
    std::vector<ComponentReport> components;
    std::vector<DigitAutomaton> component_automata;  // constrained, for reports
};

SUnitResult solve_sunit(const SUnitInstance& inst, const SUnitOptions& opts = {});

// ---------------------------------------------------------------------------
// exposed pieces (tested separately, reused by the reduction pipeline)

// Self-contained coprimary component: its own presentation and the images of
// the constants (c_1..c_m, then c_0).
struct Component {
    ModulePresentation pres;
    std::vector<ModElem> constants;  // c_1..c_m, c_0 last
    std::vector<Poly> prime;         // declared prime generators (may be empty)
    bool primary_assumed = true;
    std::string origin;
};

struct Decomposition {
    bool ok = false;
    std::string error;
    bool verified = false;
    std::vector<Component> components;
};

// Splits M (with constants) into components: hint verification, univariate
// Smith normal form, or the coprime factor route for principal relations.
Decomposition decompose_sunit(const ModulePresentation& module,
                              const std::vector<ModElem>& constants_with_c0,
                              const std::vector<std::vector<ModElem>>& hint);

// Matrix form of a component: K-linear embedding with commuting actions.
struct MatrixForm {
    RingPtr kring;  // parameter ring (fraction field is implied)
    uint32_t D = 0;
    std::vector<KMat> action;                    // one per module ring variable
    std::vector<std::optional<KMat>> action_inv; // nullopt when not invertible
    std::vector<std::vector<RatFun>> constants;  // c_1..c_m then c_0, each length D
    std::string route;
};

std::optional<MatrixForm> component_matrix_form(const ModulePresentation& pres,
                                                const std::vector<ModElem>& constants_with_c0,
                                                std::string* why = nullptr);

// p-kernel exploration backend. Returns the solution automaton over Z^{n*m};
// `closed` reports syntactic closure (no bounded-equivalence hypotheses).
std::optional<DigitAutomaton> kernel_solve(const MatrixForm& mf, uint32_t nvars, uint32_t blocks,
                                           const SUnitOptions& opts, bool& closed);

}  // namespace lamp
