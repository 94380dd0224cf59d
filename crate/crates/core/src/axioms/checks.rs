use std::collections::hash_map::Entry;
use std::collections::HashMap;

use super::transform::{best_decompositions, cp_signature, lift, slide, worst_decompositions};
use super::{Axiom, AxiomVerdict, Budget, EvidenceMode, Outcome, Witness};
use crate::enumerate::{dichotomous_rankings, ordered_bell, power_rankings, sample_power_rankings};
use crate::error::{Error, Result};
use crate::order::{Family, Permutation, PowerRanking, SocialRanking, Universe};
use crate::srs::Srs;

type Orders = Box<dyn Iterator<Item = PowerRanking>>;

/// Base orders `≿` an axiom is checked over, and how complete they are.
fn scope(axiom: Axiom, universe: Universe, budget: &Budget) -> Result<(EvidenceMode, Orders)> {
    let total = ordered_bell(universe.coalition_count());
    let exhaustive = || -> Result<(EvidenceMode, Orders)> {
        Ok((
            EvidenceMode::Exhaustive,
            Box::new(power_rankings(universe, budget.max_domain)?),
        ))
    };
    if !axiom.is_fan_out() || total <= budget.max_orders as u128 {
        return exhaustive();
    }
    if !budget.sampling {
        return Err(Error::Budget(format!(
            "{axiom} over {total} orders exceeds the budget of {} and sampling is off",
            budget.max_orders
        )));
    }
    let sample =
        sample_power_rankings(universe, budget.max_orders, budget.seed, budget.max_domain)?;
    Ok((EvidenceMode::Sampled, Box::new(sample.into_iter())))
}

struct Search {
    instances: u64,
    witness: Option<Witness>,
}

impl Search {
    fn new() -> Self {
        Search {
            instances: 0,
            witness: None,
        }
    }

    fn found(&self) -> bool {
        self.witness.is_some()
    }

    fn fail(
        &mut self,
        before: &PowerRanking,
        before_output: &SocialRanking,
        after: Option<(&PowerRanking, SocialRanking)>,
        pair: Option<(usize, usize)>,
    ) {
        let (after, after_output) = match after {
            Some((r, out)) => (Some(r.clone()), Some(out)),
            None => (None, None),
        };
        self.witness = Some(Witness {
            before: before.clone(),
            after,
            permutation: None,
            pair,
            before_output: before_output.clone(),
            after_output,
        });
    }
}

fn verdict(
    axiom: Axiom,
    srs: &Srs,
    universe: Universe,
    mode: EvidenceMode,
    search: Search,
) -> AxiomVerdict {
    AxiomVerdict {
        axiom,
        srs: srs.clone(),
        mode,
        outcome: if search.found() {
            Outcome::Fails
        } else {
            Outcome::Holds
        },
        universe,
        instances: search.instances,
        witness: search.witness,
    }
}

fn ordered_pairs(universe: Universe) -> Vec<(usize, usize)> {
    let n = universe.n();
    (0..n)
        .flat_map(|x| (0..n).filter(move |&y| y != x).map(move |y| (x, y)))
        .collect()
}

/// Dispatches to the checker for `axiom`.
pub fn check(axiom: Axiom, srs: &Srs, universe: Universe, budget: &Budget) -> Result<AxiomVerdict> {
    if let Srs::PluralityTieBreak(Some(order)) = srs {
        if order.len() != universe.n() {
            return Err(Error::LengthMismatch(order.len(), universe.n()));
        }
    }
    match axiom {
        Axiom::Nt => check_nt(srs, universe, budget),
        Axiom::Wivip => check_wivip(srs, universe, budget),
        Axiom::Iws => check_iws(srs, universe, budget),
        Axiom::Ibs => check_ibs(srs, universe, budget),
        Axiom::To => check_to(srs, universe, budget),
        Axiom::Si => check_si(srs, universe, budget),
        Axiom::Ssi => check_ssi(srs, universe, budget),
        Axiom::TopSi => check_top_si(srs, universe, budget),
        Axiom::Inui => check_inui(srs, universe, budget),
        Axiom::Iic => check_iic(srs, universe, budget),
    }
}

/// Neutrality: `π(x) R_{≿π} π(y) ⟺ x R_≿ y` for every `π`.
pub fn check_nt(srs: &Srs, universe: Universe, budget: &Budget) -> Result<AxiomVerdict> {
    let (mode, orders) = scope(Axiom::Nt, universe, budget)?;
    let pairs = ordered_pairs(universe);
    let perms: Vec<Permutation> = Permutation::all(universe.n()).skip(1).collect();
    let mut search = Search::new();
    'orders: for r in orders {
        let out = srs.rank(&r);
        for pi in &perms {
            search.instances += 1;
            let permuted = r.permute(pi);
            let out_pi = srs.rank(&permuted);
            if let Some(&(x, y)) = pairs.iter().find(|&&(x, y)| {
                out.weakly_above(x, y) != out_pi.weakly_above(pi.apply(x), pi.apply(y))
            }) {
                search.fail(&r, &out, Some((&permuted, out_pi)), Some((x, y)));
                search.witness.as_mut().expect("just set").permutation = Some(pi.clone());
                break 'orders;
            }
        }
    }
    Ok(verdict(Axiom::Nt, srs, universe, mode, search))
}

/// On every dichotomous `Σ1 ≻ Σ2`: `x ∈ ⋂Σ1`, `y ∉ ⋂Σ1` gives `x P y`.
pub fn check_wivip(srs: &Srs, universe: Universe, budget: &Budget) -> Result<AxiomVerdict> {
    if universe.coalition_count() > budget.max_domain {
        return Err(Error::Budget(format!(
            "domain of size {} exceeds the enumeration limit {}",
            universe.coalition_count(),
            budget.max_domain
        )));
    }
    let mut search = Search::new();
    for r in dichotomous_rankings(universe) {
        search.instances += 1;
        let common = r.best().intersection_or(universe);
        let out = srs.rank(&r);
        let violation = common
            .members()
            .flat_map(|x| {
                universe
                    .individuals()
                    .filter(move |&y| !common.contains(y))
                    .map(move |y| (x, y))
            })
            .find(|&(x, y)| !out.strictly_above(x, y));
        if let Some(pair) = violation {
            search.fail(&r, &out, None, Some(pair));
            break;
        }
    }
    Ok(verdict(
        Axiom::Wivip,
        srs,
        universe,
        EvidenceMode::Exhaustive,
        search,
    ))
}

fn check_decompositions(
    axiom: Axiom,
    best: bool,
    srs: &Srs,
    universe: Universe,
    budget: &Budget,
) -> Result<AxiomVerdict> {
    let (mode, orders) = scope(axiom, universe, budget)?;
    let pairs = ordered_pairs(universe);
    let mut search = Search::new();
    for r in orders {
        let out = srs.rank(&r);
        let strict: Vec<(usize, usize)> = pairs
            .iter()
            .copied()
            .filter(|&(x, y)| out.strictly_above(x, y))
            .collect();
        if strict.is_empty() {
            continue;
        }
        let decompositions: Box<dyn Iterator<Item = PowerRanking> + '_> = if best {
            Box::new(best_decompositions(&r))
        } else {
            Box::new(worst_decompositions(&r))
        };
        for after in decompositions {
            search.instances += 1;
            let out_after = srs.rank(&after);
            if let Some(&pair) = strict
                .iter()
                .find(|&&(x, y)| !out_after.strictly_above(x, y))
            {
                search.fail(&r, &out, Some((&after, out_after)), Some(pair));
                break;
            }
        }
        if search.found() {
            break;
        }
    }
    Ok(verdict(axiom, srs, universe, mode, search))
}

/// Independence from the worst set: splitting `Σl` keeps every `x P y`.
pub fn check_iws(srs: &Srs, universe: Universe, budget: &Budget) -> Result<AxiomVerdict> {
    check_decompositions(Axiom::Iws, false, srs, universe, budget)
}

/// Independence from the best set: splitting `Σ1` keeps every `x P y`.
pub fn check_ibs(srs: &Srs, universe: Universe, budget: &Budget) -> Result<AxiomVerdict> {
    check_decompositions(Axiom::Ibs, true, srs, universe, budget)
}

/// Tops-only: equal best classes give equal outputs. Orders are grouped by
/// `Σ1` and each is compared with its group's first member.
pub fn check_to(srs: &Srs, universe: Universe, budget: &Budget) -> Result<AxiomVerdict> {
    let (mode, orders) = scope(Axiom::To, universe, budget)?;
    let mut groups: HashMap<Family, (PowerRanking, SocialRanking)> = HashMap::new();
    let mut search = Search::new();
    for r in orders {
        search.instances += 1;
        let out = srs.rank(&r);
        match groups.entry(r.best()) {
            Entry::Vacant(slot) => {
                slot.insert((r, out));
            }
            Entry::Occupied(slot) => {
                let (rep, rep_out) = slot.get();
                if *rep_out != out {
                    let pair = universe
                        .pairs()
                        .find(|&(x, y)| rep_out.pair(x, y) != out.pair(x, y));
                    search.fail(rep, rep_out, Some((&r, out)), pair);
                    break;
                }
            }
        }
    }
    Ok(verdict(Axiom::To, srs, universe, mode, search))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum SlideKind {
    Proper,
    Strong,
    TopOnly,
}

fn check_slides(
    axiom: Axiom,
    kind: SlideKind,
    srs: &Srs,
    universe: Universe,
    budget: &Budget,
) -> Result<AxiomVerdict> {
    let (mode, orders) = scope(axiom, universe, budget)?;
    let pairs: Vec<(usize, usize)> = universe.pairs().collect();
    let mut search = Search::new();
    'orders: for r in orders {
        let out = srs.rank(&r);
        let l = r.len();
        let sources = if kind == SlideKind::TopOnly {
            0..1
        } else {
            0..l
        };
        for k1 in sources {
            let class = r.classes()[k1];
            for delta in class.subfamilies() {
                if delta == class && kind != SlideKind::Strong {
                    continue;
                }
                let balanced: Vec<(usize, usize)> = pairs
                    .iter()
                    .copied()
                    .filter(|&(x, y)| delta.count_containing(x) == delta.count_containing(y))
                    .collect();
                if balanced.is_empty() {
                    continue;
                }
                for k2 in 0..l {
                    search.instances += 1;
                    let after = slide(&r, k1, delta, k2);
                    let out_after = srs.rank(&after);
                    if let Some(&pair) = balanced
                        .iter()
                        .find(|&&(x, y)| out.pair(x, y) != out_after.pair(x, y))
                    {
                        search.fail(&r, &out, Some((&after, out_after)), Some(pair));
                        break 'orders;
                    }
                }
            }
        }
    }
    Ok(verdict(axiom, srs, universe, mode, search))
}

/// Slide independence: moving a proper `Δ ⊊ Σ_{k1}` with `|Δ[x]| = |Δ[y]|`
/// into `Σ_{k2}` keeps `R|{x,y}`.
pub fn check_si(srs: &Srs, universe: Universe, budget: &Budget) -> Result<AxiomVerdict> {
    check_slides(Axiom::Si, SlideKind::Proper, srs, universe, budget)
}

/// Strong slide independence: as SI, but `Δ` may be all of `Σ_{k1}`.
pub fn check_ssi(srs: &Srs, universe: Universe, budget: &Budget) -> Result<AxiomVerdict> {
    check_slides(Axiom::Ssi, SlideKind::Strong, srs, universe, budget)
}

/// SI restricted to slides out of the best class (`k1 = 1`).
pub fn check_top_si(srs: &Srs, universe: Universe, budget: &Budget) -> Result<AxiomVerdict> {
    check_slides(Axiom::TopSi, SlideKind::TopOnly, srs, universe, budget)
}

/// Independence of non-unanimous improvements: lifting `Δ ⊊ Σk` above
/// `Σk ∖ Δ` keeps `R|{x,y}` whenever `x, y ∉ ⋂Δ`.
pub fn check_inui(srs: &Srs, universe: Universe, budget: &Budget) -> Result<AxiomVerdict> {
    let (mode, orders) = scope(Axiom::Inui, universe, budget)?;
    let pairs: Vec<(usize, usize)> = universe.pairs().collect();
    let mut search = Search::new();
    'orders: for r in orders {
        let out = srs.rank(&r);
        for k in 0..r.len() {
            let class = r.classes()[k];
            for delta in class.subfamilies() {
                if delta.is_empty() || delta == class {
                    continue;
                }
                let eligible: Vec<(usize, usize)> = pairs
                    .iter()
                    .copied()
                    .filter(|&(x, y)| !delta.all_contain(x) && !delta.all_contain(y))
                    .collect();
                if eligible.is_empty() {
                    continue;
                }
                search.instances += 1;
                let after = lift(&r, k, delta);
                let out_after = srs.rank(&after);
                if let Some(&pair) = eligible
                    .iter()
                    .find(|&&(x, y)| out.pair(x, y) != out_after.pair(x, y))
                {
                    search.fail(&r, &out, Some((&after, out_after)), Some(pair));
                    break 'orders;
                }
            }
        }
    }
    Ok(verdict(Axiom::Inui, srs, universe, mode, search))
}

/// Independence of irrelevant coalitions: orders with the same CP signature
/// for `(x, y)` must relate `x` and `y` the same way. Checked by bucketing
/// every order on its signature.
pub fn check_iic(srs: &Srs, universe: Universe, budget: &Budget) -> Result<AxiomVerdict> {
    let (mode, orders) = scope(Axiom::Iic, universe, budget)?;
    let pairs: Vec<(usize, usize)> = universe.pairs().collect();
    let mut buckets: HashMap<
        (usize, super::transform::CpSignature),
        (PowerRanking, SocialRanking),
    > = HashMap::new();
    let mut search = Search::new();
    'orders: for r in orders {
        let out = srs.rank(&r);
        for (i, &(x, y)) in pairs.iter().enumerate() {
            search.instances += 1;
            match buckets.entry((i, cp_signature(&r, x, y))) {
                Entry::Vacant(slot) => {
                    slot.insert((r.clone(), out.clone()));
                }
                Entry::Occupied(slot) => {
                    let (rep, rep_out) = slot.get();
                    if rep_out.pair(x, y) != out.pair(x, y) {
                        search.fail(rep, rep_out, Some((&r, out.clone())), Some((x, y)));
                        break 'orders;
                    }
                }
            }
        }
    }
    Ok(verdict(Axiom::Iic, srs, universe, mode, search))
}
