//! The identity table: ids, formulas, tolerance classes and hypotheses.

/// Tolerance class of an identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TolClass {
    Axioms,
    Connection,
    Curvature,
    Lemma,
    Drift,
}

/// Hypotheses an identity may depend on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Hyp {
    /// Every structure axiom.
    Axioms,
    /// `(∇_X f)Y + (∇_Y f)X = 0`.
    NearlyC,
    /// `[ξ_i, ξ_j] = 0`.
    XiBracket,
    /// `g(∇_X ξ_i, ξ_j) = 0`.
    XiNormal,
    /// `(∇_X Q)Y = 0` for `Y ∈ 𝒟`.
    QParallel,
    /// `R(Q̃X, Y)Z ∈ 𝒟` for `X, Y, Z ∈ 𝒟`.
    CurvInv,
    /// `h_1 = … = h_s`, equivalently `dη^1 = … = dη^s`.
    Uniform,
    /// `ker dη^i` is exactly the Reeb span, so `h_i` is nondegenerate on `𝒟`.
    HNondegenerate,
}

impl Hyp {
    pub fn name(self) -> &'static str {
        match self {
            Hyp::Axioms => "axioms",
            Hyp::NearlyC => "nearly_c",
            Hyp::XiBracket => "xi_bracket",
            Hyp::XiNormal => "xi_normal_parallel",
            Hyp::QParallel => "q_parallel_on_d",
            Hyp::CurvInv => "curvature_invariance_weak",
            Hyp::Uniform => "uniform_coframe",
            Hyp::HNondegenerate => "h_nondegenerate_on_d",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Identity {
    pub suite: &'static str,
    pub id: &'static str,
    pub formula: &'static str,
    pub tol: TolClass,
    pub gate: &'static [Hyp],
    /// Quantified over Reeb indices, so vacuous when `s = 0`.
    pub reeb: bool,
}

const B: &[Hyp] = &[Hyp::Axioms, Hyp::NearlyC];
const REEB: &[Hyp] = &[Hyp::Axioms, Hyp::NearlyC, Hyp::XiBracket, Hyp::XiNormal];
const QP: &[Hyp] = &[Hyp::Axioms, Hyp::NearlyC, Hyp::QParallel];
const QC: &[Hyp] = &[Hyp::Axioms, Hyp::NearlyC, Hyp::QParallel, Hyp::CurvInv];
const FOUR: &[Hyp] = &[Hyp::Axioms, Hyp::NearlyC, Hyp::XiBracket, Hyp::XiNormal, Hyp::QParallel, Hyp::CurvInv];
const FK: &[Hyp] =
    &[Hyp::Axioms, Hyp::NearlyC, Hyp::XiBracket, Hyp::XiNormal, Hyp::QParallel, Hyp::CurvInv, Hyp::Uniform, Hyp::HNondegenerate];

const fn id(suite: &'static str, id: &'static str, formula: &'static str, tol: TolClass, gate: &'static [Hyp], reeb: bool) -> Identity {
    Identity { suite, id, formula, tol, gate, reeb }
}

use TolClass::*;

pub const AXIOM_IDS: &[Identity] = &[
    id("axioms", "f_skew", "g(fX,Y) = -g(X,fY)", Axioms, &[], false),
    id("axioms", "q_self_adjoint", "g(QX,Y) = g(X,QY)", Axioms, &[], false),
    id("axioms", "q_nonsingular", "rank Q = 2n+s", Axioms, &[], false),
    id("axioms", "f_rank", "rank f = 2n", Axioms, &[], false),
    id("axioms", "f_squared", "f^2 = -Q + sum eta^i (x) xi_i", Axioms, &[], false),
    id("axioms", "metric_compat", "g(fX,fY) = g(X,QY) - sum eta^i(X) eta^i(Y)", Axioms, &[], false),
    id("axioms", "eta_xi_dual", "eta^i(xi_j) = delta^i_j", Axioms, &[], true),
    id("axioms", "q_fixes_xi", "Q xi_i = xi_i", Axioms, &[], true),
    id("axioms", "eta_is_metric_dual", "eta^i(X) = g(X, xi_i)", Axioms, &[], true),
    id("axioms", "xi_orthonormal", "g(xi_i, xi_j) = delta_ij", Axioms, &[], true),
    id("axioms", "f_kills_xi", "f xi_i = 0", Axioms, &[], true),
    id("axioms", "eta_kills_f", "eta^i o f = 0", Axioms, &[], true),
    id("axioms", "eta_q", "eta^i o Q = eta^i", Axioms, &[], true),
    id("axioms", "q_f_commute", "Qf = fQ", Axioms, &[], false),
    id("axioms", "d_projector_idempotent", "P_D^2 = P_D, P_D = Id - sum xi_i (x) eta^i", Axioms, &[], false),
    id("axioms", "metric_parallel", "nabla g = 0", Connection, &[], false),
    id("axioms", "riemann_symmetries", "R(X,Y,Z,V) = -R(Y,X,Z,V) = -R(X,Y,V,Z) = R(Z,V,X,Y)", Connection, &[], false),
    id("axioms", "bianchi", "R(X,Y)Z + R(Y,Z)X + R(Z,X)Y = 0", Connection, &[], false),
];

pub const REEB_IDS: &[Identity] = &[
    id("reeb", "xi_bracket", "[xi_i, xi_j] = 0", Connection, &[], true),
    id("reeb", "xi_normal_parallel", "g(nabla_X xi_i, xi_j) = 0", Connection, &[], true),
    id("reeb", "xi_geodesic", "eta^k(nabla_{xi_i} xi_j) = 0", Connection, &[], true),
    id("reeb", "h_skew", "g(h_i X, Y) = -g(X, h_i Y), h_i = nabla xi_i", Connection, &[], true),
    id("reeb", "xi_killing", "g(nabla_X xi_i, Y) + g(nabla_Y xi_i, X) = 0", Curvature, &[], true),
    id("reeb", "kerf_totally_geodesic", "P_D nabla_{xi_i} xi_j = 0", Connection, REEB, true),
    id("reeb", "kerf_flat", "R(xi_i, xi_j) xi_k = 0", Curvature, REEB, true),
];

pub const LEMMA_IDS: &[Identity] = &[
    id("lemmas", "nearly_c", "(nabla_X f)Y + (nabla_Y f)X = 0", Curvature, &[], false),
    id("lemmas", "q_parallel_on_d", "(nabla_X Q)Y = 0, Y in D", Curvature, &[], false),
    id("lemmas", "q_parallel_general", "(nabla_X Q)Y = -sum eta^i(Y) Q~ nabla_X xi_i", Curvature, QP, true),
    id("lemmas", "curvature_invariance_weak", "R(Q~X,Y)Z in D for X,Y,Z in D", Curvature, &[], true),
    id("lemmas", "curvature_invariance_classical", "R(X,Y)Z in D for X,Y,Z in D", Curvature, &[], true),
    id("lemmas", "nabla_h_xi", "(nabla_X h_i) xi_j = -h_i h_j X", Lemma, REEB, true),
    id("lemmas", "nabla_f_xi", "(nabla_X f) xi_i = -f h_i X", Lemma, REEB, true),
    id("lemmas", "h_f_anticommute", "h_i f + f h_i = 0", Lemma, REEB, true),
    id("lemmas", "h_q_commute", "h_i Q = Q h_i", Lemma, REEB, true),
    id("lemmas", "nabla_f_xi_component", "g((nabla_X f)Y, xi_i) = g(f h_i X, Y)", Lemma, REEB, true),
    id(
        "lemmas",
        "nabla_f_fY",
        "g((nabla_X f)fY, Z) = g((nabla_X f)Y, fZ) + sum[eta^i(Y) g(h_i X, Z) + eta^i(Z) g(h_i X, QY)]",
        Lemma,
        QP,
        false,
    ),
    id(
        "lemmas",
        "nabla_fX_f",
        "g((nabla_{fX} f)Y, Z) = g((nabla_X f)Y, fZ) + sum[eta^i(X) g(h_i Z, Y) + eta^i(Z) g(h_i X, QY)]",
        Lemma,
        QP,
        false,
    ),
    id(
        "lemmas",
        "nabla_fX_f_fY",
        "g((nabla_{fX} f)fY, Z) = g((nabla_X f)QZ, Y) + sum[eta^i(X) g(h_i Z, fY) + eta^i(Y) g(h_i X, fZ) - eta^i(Z) g(f h_i X, Q~Y)]",
        Lemma,
        QP,
        false,
    ),
    id("lemmas", "curvature_f_derivation", "g(R(fX,Y)Z,V) + g(R(X,fY)Z,V) + g(R(X,Y)fZ,V) + g(R(X,Y)Z,fV) = 0", Lemma, B, false),
    id("lemmas", "r_xi_xi", "R(xi_j, xi_k) = 0", Lemma, QC, true),
    id("lemmas", "r_xi_z_ff", "g(R(xi_j, Z) fX, fY) = 0", Lemma, QC, true),
    id("lemmas", "r_xi_x_nabla_h", "R(xi_i, X)Y = -(nabla_X h_i)Y", Lemma, FOUR, true),
    id("lemmas", "r_xi_x_formula", "g(R(xi_i, X)Y, Z) = sum_j [eta^j(Y) g(h_i h_j X, Z) - eta^j(Z) g(h_i h_j X, Y)]", Lemma, FOUR, true),
    id("lemmas", "nabla_h_formula", "(nabla_X h_i)Y = sum_j [g(h_i h_j X, Y) xi_j - eta^j(Y) h_i h_j X]", Lemma, FOUR, true),
    id("lemmas", "ricci_xi", "Ric(xi_i, Z) = -sum_j eta^j(Z) tr(h_i h_j)", Lemma, FOUR, true),
    id("lemmas", "nabla_xi_h", "nabla_{xi_j} h_i = 0", Lemma, FOUR, true),
    id("lemmas", "trace_h2_constant", "tr(h_i^2) is constant across sample points", Drift, FOUR, true),
    id("lemmas", "curvature_ffzv", "g(R(fX,fY)Z,V) = g(R(X,Y)fZ,fV) - delta(X,Y,Z,V)/2", Lemma, FOUR, false),
    id(
        "lemmas",
        "curvature_ffff",
        "g(R(fX,fY)fZ,fV) = g(R(QX,QY)Z,V) + delta(fX,fY,Z,V)/2 + sum[eta^i(Y) g(R(xi_i,QX)Z,V) - eta^i(X) g(R(xi_i,QY)Z,V)]",
        Lemma,
        FOUR,
        false,
    ),
    id("lemmas", "delta_symmetry", "delta(Y,X,Z,V) = delta(X,Y,V,Z) = delta(Z,V,X,Y) = -delta(X,Y,Z,V)", Lemma, B, false),
    id("lemmas", "delta_xi_slot", "delta vanishes when any slot is xi_i", Lemma, FOUR, true),
    id("lemmas", "delta_ffz_xi", "delta(fX, fY, Z, xi_j) = 0", Lemma, B, true),
    id("lemmas", "h_commute", "h_i h_j = h_j h_i", Lemma, FOUR, true),
    id("lemmas", "hh_self_adjoint", "g(h_i h_j X, Y) = g(X, h_i h_j Y)", Lemma, FOUR, true),
    id(
        "lemmas",
        "nabla_f_fhz",
        "g((nabla_X f)Y, f h_j Z) = sum_i [eta^i(X) g(h_j Y, h_i Z) - eta^i(Y) g(h_j X, h_i Z)]",
        Lemma,
        FOUR,
        true,
    ),
    id("lemmas", "deta_h", "d eta^i(X,Y) = 2 g(h_i X, Y)", Lemma, REEB, true),
    id("lemmas", "dphi0", "d Phi^(0) = 3 sum_j eta^j ^ Phi^(1)_j, Phi^(0)(X,Y) = g(fX,Y)", Lemma, FK, true),
    id("lemmas", "dphi1", "d Phi^(1)_i = 3 sum_j eta^j ^ Phi^(1)_ij, Phi^(1)_ij(X,Y) = g(f h_i h_j X, Y)", Lemma, FK, true),
    id("lemmas", "deta_wedge_phi1", "sum_j d eta^j ^ Phi^(1)_j = 0", Lemma, FK, true),
];

/// Every pointwise identity, for documentation and lookup.
pub fn all() -> impl Iterator<Item = &'static Identity> {
    AXIOM_IDS.iter().chain(REEB_IDS).chain(LEMMA_IDS)
}

pub fn lookup(suite: &str, id: &str) -> Option<&'static Identity> {
    all().find(|i| i.suite == suite && i.id == id)
}

/// `suite/id` keys of every identity whose gate contains one of `hyps`.
pub fn gated_on(hyps: &[Hyp]) -> Vec<String> {
    all().filter(|i| i.gate.iter().any(|g| hyps.contains(g))).map(|i| format!("{}/{}", i.suite, i.id)).collect()
}
