//! Iterated kernels and the brute-force pairing they must reproduce.

use std::collections::BTreeMap;
use std::thread;

use crate::char_series::{pairing, CharacterSeries, QPoly, QSeries, ThetaTwist};
use crate::epoly::Engine;
use crate::error::{Error, Result};
use crate::lattice_weyl::Weight;
use crate::qexp::QExp;

use super::kernels::{kernels_from, StepKind};
use super::{theta_hat_product, ExpansionCoefficient, Route};

/// The partial sums over chains ending at each weight, with the smallest
/// chain energy reaching it.
type Layer = BTreeMap<Weight, (QSeries, QExp)>;

fn step_kinds(route: Route, depth: usize) -> Vec<StepKind> {
    (0..depth)
        .map(|k| match route {
            Route::Dag => StepKind::Dag,
            Route::Bar => StepKind::Bar,
            Route::Mixed { switch } | Route::MixedLiteral { switch } if k < switch => StepKind::Bar,
            Route::Mixed { switch } if k == switch => StepKind::Switch,
            Route::MixedLiteral { switch } if k == switch => StepKind::LiteralSwitch,
            Route::Mixed { .. } | Route::MixedLiteral { .. } => StepKind::Dag,
        })
        .collect()
}

struct ChainRun<'e, 'a> {
    engine: &'e Engine<'a>,
    kinds: Vec<StepKind>,
    twists: &'e [ThetaTwist],
    /// Only this target is kept at the last step, when given.
    target: Option<&'e Weight>,
    cutoff: QExp,
}

impl ChainRun<'_, '_> {
    /// Pushes `layer`, which sits after `from` steps, through the steps
    /// up to `to`. The last step of the chain only keeps the target and
    /// omits its `1/h⁰`.
    fn advance(&self, mut layer: Layer, from: usize, to: usize) -> Result<Layer> {
        for k in from..to {
            let last = k + 1 == self.kinds.len();
            let mut next = Layer::new();
            for (source, (acc, energy)) in &layer {
                let Some(low) = acc.poly().valuation() else { continue };
                let budget = self.cutoff - low;
                for kernel in kernels_from(self.engine, self.kinds[k], source, &self.twists[k], budget, self.cutoff)? {
                    if last && self.target.is_some_and(|t| t != &kernel.to) {
                        continue;
                    }
                    let contribution = if last {
                        acc * &QSeries::exact(kernel.numerator())
                    } else {
                        acc * &kernel.value
                    };
                    let contribution = contribution.with_cutoff(self.cutoff);
                    merge_into(&mut next, kernel.to, contribution, *energy + kernel.energy);
                }
            }
            layer = next;
        }
        Ok(layer)
    }
}

/// `Ξ^{c,a}_{p,𝐯}` by iterating the one-step kernels along `route`,
/// `p = twists.len()`, up to `q^cutoff`.
///
/// Chains are pruned by energy, which is sound because every kernel is
/// `q^{energy + m}/h⁰` with `m ≥ 0` and `h⁰ ∈ 1 + qℤ[q]`. The first step
/// is fanned out over threads.
pub fn xi_chain(
    engine: &Engine<'_>,
    c: &Weight,
    a: &Weight,
    twists: &[ThetaTwist],
    route: Route,
    cutoff: QExp,
) -> Result<ExpansionCoefficient> {
    let done = run_chain(engine, c, Some(a), twists, route, cutoff)?;
    Ok(coefficient(c, a, twists, route, cutoff, done.get(a)))
}

/// `Ξ^{c,a}_{p,𝐯}` for every `a` reached by a chain below the cutoff.
pub fn xi_row(
    engine: &Engine<'_>,
    c: &Weight,
    twists: &[ThetaTwist],
    route: Route,
    cutoff: QExp,
) -> Result<BTreeMap<Weight, ExpansionCoefficient>> {
    let done = run_chain(engine, c, None, twists, route, cutoff)?;
    Ok(done
        .iter()
        .filter(|(_, (sum, _))| !sum.poly().is_zero())
        .map(|(a, entry)| (a.clone(), coefficient(c, a, twists, route, cutoff, Some(entry))))
        .collect())
}

fn coefficient(
    c: &Weight,
    a: &Weight,
    twists: &[ThetaTwist],
    route: Route,
    cutoff: QExp,
    entry: Option<&(QSeries, QExp)>,
) -> ExpansionCoefficient {
    let (value, min_energy) = match entry {
        Some((sum, e)) if !sum.poly().is_zero() => (sum.with_cutoff(cutoff), Some(*e)),
        _ => (QSeries::truncated(QPoly::zero(), cutoff), None),
    };
    ExpansionCoefficient {
        source: c.clone(),
        target: a.clone(),
        depth: twists.len(),
        twists: twists.iter().map(|t| t.to_string()).collect(),
        route,
        value,
        min_energy,
    }
}

fn run_chain(
    engine: &Engine<'_>,
    c: &Weight,
    target: Option<&Weight>,
    twists: &[ThetaTwist],
    route: Route,
    cutoff: QExp,
) -> Result<Layer> {
    let rs = engine.root_system();
    if twists.is_empty() {
        return Err(Error::Config("a chain needs at least one theta function".into()));
    }
    route.validate(twists.len())?;
    for t in twists {
        t.validate(rs)?;
    }
    if cutoff <= QExp::ZERO {
        let weight = target.unwrap_or(c).clone();
        return Err(Error::CutoffTooSmall { weight, cutoff: format!("{cutoff}: no certified coefficients") });
    }
    let start = match route {
        Route::Mixed { .. } => rs.iota(c),
        _ => c.clone(),
    };
    let run = ChainRun { engine, kinds: step_kinds(route, twists.len()), twists, target, cutoff };
    let origin: Layer = [(start, (QSeries::one(), QExp::ZERO))].into_iter().collect();
    if run.kinds.len() == 1 {
        return run.advance(origin, 0, 1);
    }
    let first: Vec<_> = run.advance(origin, 0, 1)?.into_iter().collect();
    let workers = thread::available_parallelism().map_or(1, |n| n.get()).min(first.len()).max(1);
    let mut chunks: Vec<Layer> = vec![Layer::new(); workers];
    for (k, (w, entry)) in first.into_iter().enumerate() {
        chunks[k % workers].insert(w, entry);
    }
    let run = &run;
    let results: Vec<Result<Layer>> = thread::scope(|s| {
        let handles: Vec<_> =
            chunks.into_iter().map(|chunk| s.spawn(move || run.advance(chunk, 1, run.kinds.len()))).collect();
        handles.into_iter().map(|h| h.join().expect("chain worker panicked")).collect()
    });
    let mut merged = Layer::new();
    for layer in results {
        for (w, (sum, e)) in layer? {
            merge_into(&mut merged, w, sum, e);
        }
    }
    Ok(merged)
}

fn merge_into(layer: &mut Layer, w: Weight, contribution: QSeries, energy: QExp) {
    match layer.get_mut(&w) {
        Some((sum, min_e)) => {
            *sum = &*sum + &contribution;
            *min_e = (*min_e).min(energy);
        }
        None => {
            layer.insert(w, (contribution, energy));
        }
    }
}

/// `Ξ` from its definition as a constant term: the coefficient of
/// `E†*_a/h⁰_a` in `E†*_c θ̂^p` is `⟨E†*_c θ̂^p Ē_a μ̄∘⟩`, the coefficient of
/// `Ē_a/h⁰_a` in `Ē_c θ̂^p` is `⟨Ē_c θ̂^p E†*_a μ̄∘⟩`, and for the mixed
/// routes `⟨Ē_{c^ι} θ̂^p Ē_a μ̄∘⟩`.
pub fn xi_direct(
    engine: &Engine<'_>,
    c: &Weight,
    a: &Weight,
    twists: &[ThetaTwist],
    route: Route,
    cutoff: QExp,
) -> Result<QSeries> {
    let rs = engine.root_system();
    let (left, right): (CharacterSeries, CharacterSeries) = match route {
        Route::Dag => (engine.edag_star_exact(c)?.body.clone(), engine.ebar(a)?.body.clone()),
        Route::Bar => (engine.ebar(c)?.body.clone(), engine.edag_star_exact(a)?.body.clone()),
        Route::Mixed { .. } | Route::MixedLiteral { .. } => {
            (engine.ebar(&rs.iota(c))?.body.clone(), engine.ebar(a)?.body.clone())
        }
    };
    let product = &left * &theta_hat_product(rs, twists, cutoff);
    Ok(pairing(&product, &right, &engine.mu_bar_circ(cutoff)).with_cutoff(cutoff))
}
