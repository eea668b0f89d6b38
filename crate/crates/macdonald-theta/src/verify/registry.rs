//! The named checks. Each one compares two independently computed sides
//! and feeds every difference into a [`Tally`].

use std::collections::BTreeSet;
use std::path::PathBuf;

use super::tables::{emit_tables, TableFormat, TableKind};
use super::tally::Tally;
use super::CheckSpec;
use crate::char_series::{
    act_w0, dl_operator, dl_operator_inverse, mu_bar_circ, pairing, star, CharacterSeries, QPoly, QSeries, ThetaTwist,
};
use crate::epoly::{
    demazure_character, ebar_by_orthogonality, orbit_exponents, sigma, xi, Engine, GenericEngine, NormProduct,
};
use crate::error::{Error, Result};
use crate::lattice_weyl::{RootSystem, TypeLabel, Weight};
use crate::qexp::QExp;
use crate::rr_expansion::{
    a1_closed_form, demazure_character_gch, graded_block, modular_sum, slice_multiplicities, step_coefficients,
    theta_hat_product, xi_chain, xi_direct, xi_row, Route, ThetaExpansions,
};
use crate::scalar::Rat;

type CheckFn = fn(&CheckSpec, &RootSystem, &mut Tally, &mut Vec<PathBuf>) -> Result<()>;

/// One entry of the registry.
pub struct CheckDef {
    pub name: &'static str,
    pub summary: &'static str,
    pub(crate) supports: fn(&RootSystem) -> bool,
    pub(crate) run: CheckFn,
}

fn any_system(_: &RootSystem) -> bool {
    true
}

fn is_a1(rs: &RootSystem) -> bool {
    rs.label() == TypeLabel::A && rs.rank() == 1
}

fn is_a2(rs: &RootSystem) -> bool {
    rs.label() == TypeLabel::A && rs.rank() == 2
}

fn rank_at_most_two(rs: &RootSystem) -> bool {
    rs.rank() <= 2
}

static REGISTRY: [CheckDef; 13] = [
    CheckDef {
        name: "a1-closed-form",
        summary: "A1: the good-sequence closed form equals the dag chain for every sign sequence",
        supports: is_a1,
        run: a1_closed_form_check,
    },
    CheckDef {
        name: "a1-orbit-identity",
        summary: "A1: E†_{−n} + (1 − q^{−n})E†_n = P†_{−n}, with the n = 2 display",
        supports: is_a1,
        run: a1_orbit_identity,
    },
    CheckDef {
        name: "a2-dag-example",
        summary: "A2: E† along −ρ → s₁(−ρ) → s₂s₁(−ρ) against the reference polynomials",
        supports: is_a2,
        run: a2_dag_example,
    },
    CheckDef {
        name: "character-equality",
        summary: "Demazure-operator characters equal q^{−b²/2} w₀Ē_{b^ι}",
        supports: any_system,
        run: character_equality,
    },
    CheckDef {
        name: "demazure-slices",
        summary: "slice characters reassemble Ē_{b_-}/h⁰ and D_b ⊗ L^{⊗p}",
        supports: any_system,
        run: demazure_slices,
    },
    CheckDef {
        name: "dual-route",
        summary: "E† by intertwiners equals E† by the triangular solve",
        supports: any_system,
        run: dual_route,
    },
    CheckDef {
        name: "generic-t",
        summary: "evaluation, norm, duality and Mehta–Macdonald identities at a rational t",
        supports: rank_at_most_two,
        run: generic_t,
    },
    CheckDef {
        name: "modular-sum",
        summary: "sums over P_-^{p−1} for a = 0 and minuscule −a equal the dag chain",
        supports: any_system,
        run: modular_sum_check,
    },
    CheckDef {
        name: "orthogonality",
        summary: "⟨Ē_b E†*_c μ̄∘⟩ = δ_{bc} h⁰_b",
        supports: any_system,
        run: orthogonality,
    },
    CheckDef {
        name: "properties",
        summary: "positivity, monomiality, ς-symmetry, pruning, h⁰ recipes, Hecke and braid relations",
        supports: any_system,
        run: properties,
    },
    CheckDef {
        name: "route-coherence",
        summary: "dag coefficients from c to b equal bar coefficients from b to c",
        supports: any_system,
        run: route_coherence,
    },
    CheckDef {
        name: "thefin0",
        summary: "θ̂ equals its expansions over E†*_b/h⁰_b (b ∈ P) and Ē_b/h⁰_b (b ∈ P_-)",
        supports: any_system,
        run: theta_expansion,
    },
    CheckDef {
        name: "xi-routes",
        summary: "chained kernels equal the directly multiplied products on every route",
        supports: any_system,
        run: xi_routes,
    },
];

/// All checks, sorted by name.
pub fn registry() -> &'static [CheckDef] {
    &REGISTRY
}

pub(crate) fn find(name: &str) -> Result<&'static CheckDef> {
    REGISTRY.iter().find(|d| d.name == name).ok_or_else(|| {
        let known: Vec<&str> = REGISTRY.iter().map(|d| d.name).collect();
        Error::Config(format!("unknown check `{name}`; known checks: {}", known.join(", ")))
    })
}

fn emit(spec: &CheckSpec, kind: TableKind, artifacts: &mut Vec<PathBuf>) -> Result<()> {
    if let Some(dir) = &spec.artifacts {
        artifacts.extend(emit_tables(kind, spec, dir, TableFormat::Json)?);
    }
    Ok(())
}

/// The requested twist, or `fallback` when none was given.
fn twists_or(spec: &CheckSpec, rs: &RootSystem, fallback: Vec<ThetaTwist>) -> Result<Vec<ThetaTwist>> {
    Ok(spec.resolved_twist(rs)?.map_or(fallback, |t| vec![t]))
}

/// The trivial twist and, when `P/Q` has one, a sign character.
fn trivial_and_sign(rs: &RootSystem) -> Vec<ThetaTwist> {
    let mut out = vec![ThetaTwist::Trivial];
    out.extend(ThetaTwist::default_sign(rs).ok());
    out
}

/// Every sequence of length `p` drawn from `choices`.
fn sequences(choices: &[ThetaTwist], p: usize) -> Vec<Vec<ThetaTwist>> {
    let mut out = vec![Vec::new()];
    for _ in 0..p {
        out = out
            .into_iter()
            .flat_map(|seq| {
                choices.iter().map(move |t| {
                    let mut next = seq.clone();
                    next.push(t.clone());
                    next
                })
            })
            .collect();
    }
    out
}

fn zero_series(cutoff: QExp) -> QSeries {
    QSeries::truncated(QPoly::zero(), cutoff)
}

fn a1_closed_form_check(spec: &CheckSpec, rs: &RootSystem, tally: &mut Tally, _: &mut Vec<PathBuf>) -> Result<()> {
    let engine = Engine::new(rs);
    let cutoff = spec.cutoff();
    let choices = twists_or(spec, rs, trivial_and_sign(rs))?;
    // Window 5 is |n| ≤ 3.
    let ns: Vec<i32> = spec.weights(rs, 5).iter().map(|b| b.coords()[0]).collect();
    for p in 1..=spec.depth.unwrap_or(3) {
        for twists in sequences(&choices, p) {
            for &c in &ns {
                for &a in &ns {
                    let closed = a1_closed_form(rs, c.into(), a.into(), &twists, cutoff)?;
                    let chain = xi_chain(&engine, &Weight::new(&[c]), &Weight::new(&[a]), &twists, Route::Dag, cutoff)?;
                    tally.series(format_args!("p={p} c={c} a={a}"), &closed, &chain.value);
                }
            }
        }
    }
    Ok(())
}

fn a1_orbit_identity(spec: &CheckSpec, rs: &RootSystem, tally: &mut Tally, _: &mut Vec<PathBuf>) -> Result<()> {
    let engine = Engine::new(rs);
    // Window 18 is 1 ≤ n ≤ 6.
    for n in spec.weights(rs, 18).iter().map(|b| b.coords()[0]).filter(|&n| n > 0) {
        let minus = engine.edag(&Weight::new(&[-n]))?.body;
        let plus = engine.edag(&Weight::new(&[n]))?.body;
        let factor = &QPoly::one() - &QPoly::q_power(QExp::int(-i64::from(n)));
        let lhs = &minus + &plus.mul_qpoly(&factor);
        let p_dag = star(&engine.ebar(&Weight::new(&[-n]))?.body)
            .ok_or_else(|| Error::Consistency("Ē is not a polynomial in q".into()))?;
        tally.character(format_args!("n={n}"), &lhs, &p_dag);
        if n == 2 {
            // X_2 + X_{−2} + (1 + q^{−1})
            let mut display = CharacterSeries::zero(1);
            for (w, e) in [(2, 0), (-2, 0), (0, 0), (0, -1)] {
                display.add_term(&Weight::new(&[w]), QExp::int(e), &Rat::one());
            }
            tally.character("n=2 display", &lhs, &display);
        }
    }
    Ok(())
}

/// `(weight, [(weight, q-exponent, coefficient)])` for the three `A2`
/// reference polynomials.
type Reference = ([i32; 2], &'static [([i32; 2], i64, i64)]);

const A2_REFERENCE: [Reference; 3] = [
    (
        [-1, -1],
        &[
            ([-1, -1], 0, 1),
            ([-2, 1], -1, 1),
            ([0, 0], -1, 1),
            ([0, 0], -2, 2),
            ([1, -2], -1, 1),
            ([2, -1], -2, 1),
            ([1, 1], -2, 1),
            ([-1, 2], -2, 1),
        ],
    ),
    ([1, -2], &[([1, -2], 0, 1), ([2, -1], -1, 1), ([0, 0], -1, 1)]),
    ([-1, 2], &[([-1, 2], 0, 1), ([1, 1], -1, 1), ([0, 0], 0, 1)]),
];

/// The reference `E†` polynomials of `A2`.
pub(crate) fn a2_reference() -> Vec<(Weight, CharacterSeries)> {
    A2_REFERENCE
        .iter()
        .map(|(b, terms)| {
            let mut f = CharacterSeries::zero(2);
            for (w, e, c) in terms.iter() {
                f.add_term(&Weight::new(w), QExp::int(*e), &Rat::int(*c));
            }
            (Weight::new(b), f)
        })
        .collect()
}

fn a2_dag_example(spec: &CheckSpec, rs: &RootSystem, tally: &mut Tally, artifacts: &mut Vec<PathBuf>) -> Result<()> {
    let engine = Engine::new(rs);
    for (b, expected) in a2_reference() {
        tally.character(format_args!("E†{b}"), &engine.edag(&b)?.body, &expected);
        tally.character(format_args!("recursive E†{b}"), &engine.edag_recursive(&b)?.body, &expected);
    }
    emit(&spec.clone().with_window(spec.window.unwrap_or(2)), TableKind::Epoly, artifacts)
}

fn character_equality(spec: &CheckSpec, rs: &RootSystem, tally: &mut Tally, artifacts: &mut Vec<PathBuf>) -> Result<()> {
    let engine = Engine::new(rs);
    let cutoff = spec.cutoff();
    let mu = mu_bar_circ(rs, cutoff);
    for b in spec.weights(rs, 6) {
        let chain = demazure_character(rs, &b);
        // Exact: against Ē from the engine.
        tally.character(format_args!("{b}"), &chain, &demazure_character_gch(&engine, &b)?);
        // Truncated: against Ē from Gram–Schmidt for μ̄∘.
        let oracle = ebar_by_orthogonality(rs, &rs.iota(&b), &mu)?;
        let rhs = act_w0(rs, &oracle).shift_q(-rs.half_norm(&b));
        tally.character(format_args!("{b} (orthogonality)"), &chain.with_cutoff(cutoff), &rhs);
    }
    emit(spec, TableKind::Demazure, artifacts)
}

fn demazure_slices(spec: &CheckSpec, rs: &RootSystem, tally: &mut Tally, artifacts: &mut Vec<PathBuf>) -> Result<()> {
    let engine = Engine::new(rs);
    let cutoff = spec.cutoff();
    for b in spec.weights(rs, 6).into_iter().filter(Weight::is_dominant) {
        let (lhs, rhs) = graded_block(&engine, &b, cutoff)?;
        tally.character(format_args!("block {b}"), &lhs, &rhs);
    }
    let twist = spec.resolved_twist(rs)?.unwrap_or(ThetaTwist::Trivial);
    for b in spec.weights(rs, 2) {
        for p in 0..=spec.depth.unwrap_or(2) {
            let twists = vec![twist.clone(); p];
            match slice_multiplicities(&engine, &b, &twists, cutoff) {
                Ok(table) => {
                    let lhs = table.assembled(&engine)?;
                    let theta = theta_hat_product(rs, &twists, cutoff);
                    let rhs = (&demazure_character_gch(&engine, &b)? * &theta).with_cutoff(lhs.cutoff().unwrap_or(cutoff));
                    tally.character(format_args!("slices {b} p={p}"), &lhs, &rhs);
                }
                Err(Error::Consistency(msg)) => tally.fail(format_args!("slices {b} p={p}"), msg),
                Err(e) => return Err(e),
            }
        }
    }
    emit(spec, TableKind::Slices, artifacts)
}

fn dual_route(spec: &CheckSpec, rs: &RootSystem, tally: &mut Tally, _: &mut Vec<PathBuf>) -> Result<()> {
    let engine = Engine::new(rs);
    for b in spec.weights(rs, 4) {
        tally.character(format_args!("{b}"), &engine.edag(&b)?.body, &engine.edag_recursive(&b)?.body);
    }
    Ok(())
}

/// `ht(b) = Σ_i (b_+, α_i^∨)`, the height of the dominant representative
/// measured in fundamental weights.
pub(crate) fn weight_height(rs: &RootSystem, b: &Weight) -> i64 {
    rs.plus(b).coords().iter().map(|&x| i64::from(x)).sum()
}

/// Weights of height at most `bound`, sorted.
pub(crate) fn weights_of_height(rs: &RootSystem, bound: i64) -> Vec<Weight> {
    if bound < 0 {
        return Vec::new();
    }
    let widest = (1..=rs.rank()).map(|i| rs.half_norm(&Weight::fundamental(rs.rank(), i)).to_rat()).max().unwrap_or_default();
    let ball = &widest * &Rat::int(2 * bound * bound);
    rs.weights_in_ball(&ball).into_iter().filter(|b| weight_height(rs, b) <= bound).collect()
}

fn generic_t(spec: &CheckSpec, rs: &RootSystem, tally: &mut Tally, _: &mut Vec<PathBuf>) -> Result<()> {
    // Here the window bounds the height of the weights.
    let weights = weights_of_height(rs, spec.window.unwrap_or(2));
    let engine = GenericEngine::new(rs, spec.t_point()?, spec.cutoff());
    tally.certify(spec.cutoff());
    for (k, b) in weights.iter().enumerate() {
        let c = &weights[(k + 1) % weights.len()];
        for check in engine.checks(b, c)?.checks {
            tally.flag(format_args!("{} ({b}, {c})", check.name), check.passed, || check.detail.clone());
        }
    }
    Ok(())
}

fn modular_sum_check(spec: &CheckSpec, rs: &RootSystem, tally: &mut Tally, _: &mut Vec<PathBuf>) -> Result<()> {
    let engine = Engine::new(rs);
    let cutoff = spec.cutoff();
    let twist = spec.resolved_twist(rs)?.unwrap_or(ThetaTwist::Trivial);
    let twists = vec![twist; spec.depth.unwrap_or(2)];
    let mut targets = vec![Weight::zero(rs.rank())];
    targets.extend(rs.coset_indices().into_iter().filter(|&r| r > 0).map(|r| -&Weight::fundamental(rs.rank(), r)));
    for a in targets {
        let sum = modular_sum(&engine, &twists, &a, cutoff)?;
        let chain = xi_chain(&engine, &Weight::zero(rs.rank()), &a, &twists, Route::Dag, cutoff)?;
        tally.series(format_args!("a={a}"), &sum, &chain.value);
    }
    Ok(())
}

fn orthogonality(spec: &CheckSpec, rs: &RootSystem, tally: &mut Tally, _: &mut Vec<PathBuf>) -> Result<()> {
    let engine = Engine::new(rs);
    let mu = engine.mu_bar_circ(spec.cutoff());
    let weights = spec.weights(rs, 4);
    for b in &weights {
        let eb = engine.ebar(b)?;
        for c in &weights {
            let es = engine.edag_star_exact(c)?;
            let value = pairing(&eb.body, &es.body, &mu);
            let expected = if b == c { engine.h0_poly(b)? } else { QPoly::zero() };
            tally.series(format_args!("⟨Ē{b} E†*{c}⟩"), &value, &QSeries::exact(expected));
        }
    }
    Ok(())
}

fn properties(spec: &CheckSpec, rs: &RootSystem, tally: &mut Tally, _: &mut Vec<PathBuf>) -> Result<()> {
    let engine = Engine::new(rs);
    let weights = spec.weights(rs, 4);
    let t = spec.t_point()?;
    let identity = rs.translation(&Weight::zero(rs.rank()));
    for b in &weights {
        // Positivity, leading terms and supports.
        for (what, outcome) in [
            ("Ē", engine.ebar(b)?.check_invariants(rs)),
            ("E†", engine.edag(b)?.check_invariants(rs)),
            ("E†*", engine.edag_star_exact(b)?.check_invariants(rs)),
        ] {
            tally.flag(format_args!("{what}{b} invariants"), outcome.is_ok(), || format!("{:?}", outcome.err()));
        }
        // Monomiality: the orbit exponents read off E† match the recursion.
        let direct = orbit_exponents(rs, b, &engine.edag(b)?.body)?;
        tally.flag(format_args!("monomiality {b}"), engine.m_table(b)?.exponents == direct, || "orbit exponents differ".into());
        // Two recipes for h⁰.
        let np = NormProduct::new(rs, b)?;
        let maltese = NormProduct::from_maltese(rs, b);
        tally.flag(format_args!("h⁰ recipes {b}"), np.poly(rs) == maltese.poly(rs), || format!("{} vs {}", np.poly(rs), maltese.poly(rs)));
        // ς restricted to the orbit and ξ symmetry.
        tally.flag(format_args!("ς reflexive {b}"), sigma(rs, b, b)?, || "ς_b(b) = 0".into());
        for c in &weights {
            tally.flag(format_args!("ξ symmetry ({b}, {c})"), xi(rs, b, c) == xi(rs, c, b), || "asymmetric".into());
        }
        // Pruning: a nonzero kernel into P_- comes from P_- with m = 0.
        for k in step_coefficients(&engine, b, Route::Dag, &ThetaTwist::Trivial, QExp::int(spec.qdeg.min(3)))? {
            if k.to.is_antidominant() && !k.value.poly().is_zero() {
                let ok = b.is_antidominant() && k.exponent == k.energy;
                tally.flag(format_args!("pruning {b} → {}", k.to), ok, || format!("exponent {} energy {}", k.exponent, k.energy));
            }
        }
        // Hecke relations on X_b.
        let f = CharacterSeries::x(b);
        for i in 0..=rs.rank() {
            let nu = if i == 0 { 1 } else { rs.nu(i) };
            let half = t.half_power(nu, 1);
            let tf = dl_operator(rs, i, &f, &t);
            let ttf = dl_operator(rs, i, &tf, &t);
            let rhs = &tf.scale(&(&half - &half.recip())) + &f;
            tally.character(format_args!("T_{i}² on X{b}"), &ttf, &rhs);
            tally.character(format_args!("T_{i}⁻¹T_{i} on X{b}"), &dl_operator_inverse(rs, i, &tf, &t), &f);
        }
        for i in 0..=rs.rank() {
            for j in i + 1..=rs.rank() {
                let (si, sj) = (rs.affine_simple(i), rs.affine_simple(j));
                let pair = rs.affine_mul(&si, &sj);
                let mut power = pair.clone();
                let mut order = 1;
                while power != identity && order <= 6 {
                    power = rs.affine_mul(&power, &pair);
                    order += 1;
                }
                if order > 6 {
                    continue;
                }
                let word = |first: usize, second: usize| -> CharacterSeries {
                    (0..order).fold(f.clone(), |acc, k| dl_operator(rs, if k % 2 == 0 { second } else { first }, &acc, &t))
                };
                tally.character(format_args!("braid ({i},{j}) on X{b}"), &word(i, j), &word(j, i));
            }
        }
    }
    Ok(())
}

fn route_coherence(spec: &CheckSpec, rs: &RootSystem, tally: &mut Tally, _: &mut Vec<PathBuf>) -> Result<()> {
    let engine = Engine::new(rs);
    let cutoff = spec.cutoff();
    let weights = spec.weights(rs, 4);
    for twist in twists_or(spec, rs, trivial_and_sign(rs))? {
        let tw = std::slice::from_ref(&twist);
        for c in &weights {
            let dag = xi_row(&engine, c, tw, Route::Dag, cutoff)?;
            for b in &weights {
                let lhs = dag.get(b).map_or_else(|| zero_series(cutoff), |x| x.value.clone());
                let rhs = xi_chain(&engine, b, c, tw, Route::Bar, cutoff)?.value;
                tally.series(format_args!("{twist}: {c} ↔ {b}"), &lhs, &rhs);
            }
        }
    }
    Ok(())
}

fn theta_expansion(spec: &CheckSpec, rs: &RootSystem, tally: &mut Tally, artifacts: &mut Vec<PathBuf>) -> Result<()> {
    let engine = Engine::new(rs);
    for twist in twists_or(spec, rs, trivial_and_sign(rs))? {
        let exp = ThetaExpansions::compute(&engine, &twist, spec.cutoff())?;
        tally.character(format_args!("{twist}: over P"), &exp.theta_hat, &exp.via_dag);
        tally.character(format_args!("{twist}: over P_-"), &exp.theta_hat, &exp.via_bar);
    }
    let mut table = spec.clone();
    table.depth = Some(1);
    table.route = Some(Route::Dag);
    table.weight = Some(Weight::zero(rs.rank()));
    emit(&table, TableKind::Xi, artifacts)
}

fn xi_routes(spec: &CheckSpec, rs: &RootSystem, tally: &mut Tally, artifacts: &mut Vec<PathBuf>) -> Result<()> {
    let engine = Engine::new(rs);
    let cutoff = spec.cutoff();
    let depth = spec.depth.unwrap_or(2);
    let routes: Vec<Route> = match spec.route {
        Some(Route::Mixed { .. }) => vec![Route::Mixed { switch: spec.switch.unwrap_or(0) }],
        Some(Route::MixedLiteral { .. }) => vec![Route::MixedLiteral { switch: spec.switch.unwrap_or(0) }],
        Some(route) => vec![route],
        None => [Route::Dag, Route::Bar].into_iter().chain((0..depth).map(|switch| Route::Mixed { switch })).collect(),
    };
    let twists = vec![spec.resolved_twist(rs)?.unwrap_or(ThetaTwist::Trivial); depth];
    let sources = spec.weights(rs, 2);
    let extra = rs.weights_in_ball(&Rat::int(spec.window_or(2) + 4));
    for route in routes {
        route.validate(depth)?;
        for c in &sources {
            let row = xi_row(&engine, c, &twists, route, cutoff)?;
            let targets: BTreeSet<&Weight> = row.keys().chain(extra.iter()).collect();
            for a in targets {
                let chain = row.get(a).map_or_else(|| zero_series(cutoff), |x| x.value.clone());
                let direct = xi_direct(&engine, c, a, &twists, route, cutoff)?;
                tally.series(format_args!("{route} {c} → {a}"), &chain, &direct);
            }
        }
    }
    emit(spec, TableKind::Xi, artifacts)
}
