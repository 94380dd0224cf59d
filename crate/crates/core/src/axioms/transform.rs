//! Generators for the `(≿, ≿')` pairs each axiom quantifies over, and
//! predicates that recognise those pairs directly from the definitions.
//!
//! The predicates do not call the generators. Witness replay uses them to
//! confirm a reported pair really is in the axiom's scope.

use std::cmp::Ordering;

use crate::enumerate::ordered_partitions;
use crate::order::{Family, Permutation, PowerRanking};

/// `≿'` with the worst class replaced by each of its ordered partitions.
/// The first item is `≿` itself. Empty when `≿` has a single class.
pub fn worst_decompositions(ranking: &PowerRanking) -> impl Iterator<Item = PowerRanking> + '_ {
    let l = ranking.len();
    let parts = (l >= 2).then(|| ordered_partitions(ranking.worst()));
    parts.into_iter().flatten().map(move |parts| {
        let mut classes = ranking.classes()[..l - 1].to_vec();
        classes.extend(parts);
        PowerRanking::from_parts(ranking.universe(), classes)
    })
}

/// `≿'` with the best class replaced by each of its ordered partitions.
pub fn best_decompositions(ranking: &PowerRanking) -> impl Iterator<Item = PowerRanking> + '_ {
    let l = ranking.len();
    let parts = (l >= 2).then(|| ordered_partitions(ranking.best()));
    parts.into_iter().flatten().map(move |mut parts| {
        parts.extend_from_slice(&ranking.classes()[1..]);
        PowerRanking::from_parts(ranking.universe(), parts)
    })
}

/// Moves `delta ⊆ Σ_from` into `Σ_to`. A class left empty disappears.
pub fn slide(ranking: &PowerRanking, from: usize, delta: Family, to: usize) -> PowerRanking {
    debug_assert!(delta.is_subset(ranking.classes()[from]));
    let mut classes = ranking.classes().to_vec();
    if from != to {
        classes[from] = classes[from].difference(delta);
        classes[to] = classes[to].union(delta);
    }
    classes.retain(|c| !c.is_empty());
    PowerRanking::from_parts(ranking.universe(), classes)
}

/// `Σ1 ≻ .. ≻ Σ_{k-1} ≻ Δ ≻ Σk∖Δ ≻ ..` for a non-empty proper `Δ ⊊ Σk`.
pub fn lift(ranking: &PowerRanking, k: usize, delta: Family) -> PowerRanking {
    let class = ranking.classes()[k];
    debug_assert!(!delta.is_empty() && delta.is_subset(class) && delta != class);
    let mut classes = ranking.classes().to_vec();
    classes[k] = class.difference(delta);
    classes.insert(k, delta);
    PowerRanking::from_parts(ranking.universe(), classes)
}

/// For a pair `(x, y)`: how `S ∪ {x}` compares with `S ∪ {y}` for each
/// `S ⊆ X ∖ {x, y}`, in increasing order of `S`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CpSignature {
    entries: Vec<Ordering>,
}

impl CpSignature {
    pub fn entries(&self) -> &[Ordering] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

pub fn cp_signature(ranking: &PowerRanking, x: usize, y: usize) -> CpSignature {
    let universe = ranking.universe();
    let others = universe
        .grand()
        .difference(crate::order::Coalition::singleton(x))
        .difference(crate::order::Coalition::singleton(y));
    CpSignature {
        entries: universe
            .coalitions()
            .filter(|s| s.is_subset(others))
            .map(|s| ranking.compare(s.with(x), s.with(y)))
            .collect(),
    }
}

/// `after` keeps `Σ1..Σ_{l-1}` and splits `Σl` into one or more classes.
pub fn is_worst_decomposition(before: &PowerRanking, after: &PowerRanking) -> bool {
    let l = before.len();
    l >= 2
        && after.len() >= l
        && after.classes()[..l - 1] == before.classes()[..l - 1]
        && union(&after.classes()[l - 1..]) == before.worst()
}

/// `after` splits `Σ1` and keeps `Σ2..Σl`.
pub fn is_best_decomposition(before: &PowerRanking, after: &PowerRanking) -> bool {
    let l = before.len();
    let extra = after.len().saturating_sub(l);
    l >= 2
        && after.len() >= l
        && after.classes()[extra + 1..] == before.classes()[1..]
        && union(&after.classes()[..=extra]) == before.best()
}

/// `Σ1 = Σ'1`.
pub fn same_top(before: &PowerRanking, after: &PowerRanking) -> bool {
    before.best() == after.best()
}

/// `after` is obtained by moving some `Δ ⊆ Σ_{k1}` with `|Δ[x]| = |Δ[y]|`
/// into `Σ_{k2}`. Without `strong` the class count must stay fixed, so `Δ`
/// is proper. With `top_only`, `k1` must be the best class.
pub fn is_slide(
    before: &PowerRanking,
    after: &PowerRanking,
    (x, y): (usize, usize),
    strong: bool,
    top_only: bool,
) -> bool {
    let b = before.classes();
    let a = after.classes();
    if a == b {
        return true;
    }
    let balanced = |d: Family| d.count_containing(x) == d.count_containing(y);
    if a.len() == b.len() {
        let differing: Vec<usize> = (0..b.len()).filter(|&k| a[k] != b[k]).collect();
        let [p, q] = differing[..] else {
            return false;
        };
        [(p, q), (q, p)].into_iter().any(|(k1, k2)| {
            let delta = b[k1].difference(a[k1]);
            (!top_only || k1 == 0)
                && a[k1].is_subset(b[k1])
                && !a[k1].is_empty()
                && a[k2] == b[k2].union(delta)
                && b[k2].intersection(delta).is_empty()
                && balanced(delta)
        })
    } else if strong && a.len() + 1 == b.len() {
        // Δ = Σ_{k1} vanished; everything else lines up after removing it.
        (0..b.len()).any(|k1| {
            if top_only && k1 != 0 {
                return false;
            }
            let delta = b[k1];
            let rest: Vec<Family> = b
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != k1)
                .map(|(_, &f)| f)
                .collect();
            let differing: Vec<usize> = (0..rest.len()).filter(|&k| a[k] != rest[k]).collect();
            matches!(differing[..], [k2] if a[k2] == rest[k2].union(delta)) && balanced(delta)
        })
    } else {
        false
    }
}

/// `after: Σ1 ≻ .. ≻ Δ ≻ Σk∖Δ ≻ ..` with `x, y ∉ ⋂Δ`.
pub fn is_lift(before: &PowerRanking, after: &PowerRanking, (x, y): (usize, usize)) -> bool {
    let b = before.classes();
    let a = after.classes();
    if a.len() != b.len() + 1 {
        return false;
    }
    (0..b.len()).any(|k| {
        let delta = a[k];
        a[..k] == b[..k]
            && a[k + 2..] == b[k + 1..]
            && delta.union(a[k + 1]) == b[k]
            && !delta.all_contain(x)
            && !delta.all_contain(y)
    })
}

/// `after = ≿_π`.
pub fn is_permuted(before: &PowerRanking, after: &PowerRanking, pi: &Permutation) -> bool {
    before.len() == after.len()
        && before
            .classes()
            .iter()
            .zip(after.classes())
            .all(|(b, a)| b.len() == a.len() && b.iter().all(|s| a.contains(pi.apply_coalition(s))))
}

/// `≿: Σ1 ≻ Σ2` with `x ∈ ⋂Σ1` and `y ∉ ⋂Σ1`.
pub fn is_wivip_instance(ranking: &PowerRanking, (x, y): (usize, usize)) -> bool {
    ranking.len() == 2 && ranking.best().all_contain(x) && !ranking.best().all_contain(y)
}

fn union(classes: &[Family]) -> Family {
    classes.iter().fold(Family::EMPTY, |a, &f| a.union(f))
}
