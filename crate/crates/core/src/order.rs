//! Universes, coalitions, and weak orders stored as ordered partitions.
//!
//! A coalition is a bitmask over the individuals `0..n`, and its integer value
//! doubles as its index in the power set. A [`Family`] of coalitions is in turn
//! a bitmask over those indices, so with `n <= 6` both fit in machine words and
//! every set operation the rules need is a handful of bit instructions.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, PartitionError, Result};

/// The set of individuals `X = {0, .., n-1}` and its power set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Universe {
    n: usize,
}

impl Universe {
    /// Largest supported universe; 2^6 coalitions fill a `u64` family mask.
    pub const MAX: usize = 6;

    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > Self::MAX {
            return Err(Error::Universe(n));
        }
        Ok(Universe { n })
    }

    pub fn n(self) -> usize {
        self.n
    }

    /// Number of coalitions, `2^n`.
    pub fn coalition_count(self) -> usize {
        1 << self.n
    }

    pub fn individuals(self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// The grand coalition `X`.
    pub fn grand(self) -> Coalition {
        Coalition((1u32 << self.n) - 1)
    }

    /// Every coalition, including the empty one.
    pub fn power_set(self) -> Family {
        if self.coalition_count() == 64 {
            Family(u64::MAX)
        } else {
            Family((1u64 << self.coalition_count()) - 1)
        }
    }

    pub fn coalitions(self) -> impl Iterator<Item = Coalition> {
        (0..self.coalition_count() as u32).map(Coalition)
    }

    /// Unordered pairs `(x, y)` with `x < y`.
    pub fn pairs(self) -> impl Iterator<Item = (usize, usize)> {
        (0..self.n).tuple_combinations()
    }

    pub fn check_individual(self, x: usize) -> Result<()> {
        if x < self.n {
            Ok(())
        } else {
            Err(Error::Domain {
                index: x,
                n: self.n,
            })
        }
    }

    pub fn contains(self, coalition: Coalition) -> bool {
        coalition.0 >> self.n == 0
    }
}

/// A set of individuals, as a characteristic bitmask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coalition(u32);

impl Coalition {
    pub const EMPTY: Coalition = Coalition(0);

    pub fn from_bits(bits: u32) -> Self {
        Coalition(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn singleton(x: usize) -> Self {
        Coalition(1 << x)
    }

    pub fn contains(self, x: usize) -> bool {
        x < 32 && self.0 >> x & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn with(self, x: usize) -> Self {
        Coalition(self.0 | 1 << x)
    }

    pub fn union(self, other: Coalition) -> Self {
        Coalition(self.0 | other.0)
    }

    pub fn intersection(self, other: Coalition) -> Self {
        Coalition(self.0 & other.0)
    }

    pub fn difference(self, other: Coalition) -> Self {
        Coalition(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Coalition) -> bool {
        self.0 & !other.0 == 0
    }

    /// Members in increasing order.
    pub fn members(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..32).filter(move |&i| bits >> i & 1 == 1)
    }

    /// Key for the canonical text order: by size, then by sorted members.
    pub fn canonical_key(self) -> (usize, Vec<usize>) {
        (self.len(), self.members().collect())
    }
}

impl FromIterator<usize> for Coalition {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter().fold(Coalition::EMPTY, Coalition::with)
    }
}

/// Renders with 1-indexed names, e.g. `{1,3}`.
impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.members().map(|m| m + 1).join(","))
    }
}

const fn containing_masks() -> [u64; 6] {
    let mut masks = [0u64; 6];
    let mut x = 0;
    while x < 6 {
        let mut s = 0;
        while s < 64 {
            if s >> x & 1 == 1 {
                masks[x] |= 1 << s;
            }
            s += 1;
        }
        x += 1;
    }
    masks
}

/// `CONTAINING[x]` has bit `S` set iff coalition `S` contains `x`.
const CONTAINING: [u64; 6] = containing_masks();

/// A set of coalitions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Family(u64);

impl Family {
    pub const EMPTY: Family = Family(0);

    pub fn from_bits(bits: u64) -> Self {
        Family(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn single(coalition: Coalition) -> Self {
        Family(1 << coalition.0)
    }

    pub fn contains(self, coalition: Coalition) -> bool {
        coalition.0 < 64 && self.0 >> coalition.0 & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Family) -> Self {
        Family(self.0 | other.0)
    }

    pub fn intersection(self, other: Family) -> Self {
        Family(self.0 & other.0)
    }

    pub fn difference(self, other: Family) -> Self {
        Family(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Family) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Coalition> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let s = rest.trailing_zeros();
            rest &= rest - 1;
            Some(Coalition(s))
        })
    }

    /// `Δ[x]`: the members of the family that contain `x`.
    pub fn members_containing(self, x: usize) -> Family {
        Family(self.0 & CONTAINING[x])
    }

    /// `|Δ[x]|`.
    pub fn count_containing(self, x: usize) -> u32 {
        (self.0 & CONTAINING[x]).count_ones()
    }

    /// `⋂Δ`. Fails on the empty family; see [`Family::intersection_or`].
    pub fn common_members(self) -> Result<Coalition> {
        if self.is_empty() {
            return Err(Error::EmptyFamily);
        }
        Ok(self
            .iter()
            .fold(Coalition(u32::MAX), Coalition::intersection))
    }

    /// `⋂Δ`, with the empty family mapped to the grand coalition of `universe`.
    pub fn intersection_or(self, universe: Universe) -> Coalition {
        self.common_members().unwrap_or(universe.grand())
    }

    /// Whether `x` belongs to every member. Vacuously true on the empty family.
    pub fn all_contain(self, x: usize) -> bool {
        self.0 & !CONTAINING[x] == 0
    }

    /// Every subfamily, starting with the family itself and ending with the
    /// empty one.
    pub fn subfamilies(self) -> impl Iterator<Item = Family> {
        let mask = self.0;
        let mut next = Some(mask);
        std::iter::from_fn(move || {
            let current = next?;
            next = if current == 0 {
                None
            } else {
                Some((current - 1) & mask)
            };
            Some(Family(current))
        })
    }

    /// Canonically sorted members.
    pub fn sorted(self) -> Vec<Coalition> {
        self.iter().sorted_by_key(|c| c.canonical_key()).collect()
    }
}

impl FromIterator<Coalition> for Family {
    fn from_iter<I: IntoIterator<Item = Coalition>>(iter: I) -> Self {
        Family(iter.into_iter().fold(0, |acc, c| acc | 1 << c.0))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.sorted().iter().join(" "))
    }
}

/// A weak order on `2^X`, as classes `Σ1 ≻ ... ≻ Σl`, best first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PowerRanking {
    universe: Universe,
    classes: Vec<Family>,
}

/// Builds a validated ranking from explicit coalition lists, best class first.
pub fn make_power_ranking(universe: Universe, classes: &[Vec<Coalition>]) -> Result<PowerRanking> {
    let mut families = Vec::with_capacity(classes.len());
    let mut seen = Family::EMPTY;
    for (k, class) in classes.iter().enumerate() {
        if class.is_empty() {
            return Err(PartitionError::EmptyClass(k).into());
        }
        let mut family = Family::EMPTY;
        for &c in class {
            if !universe.contains(c) {
                return Err(PartitionError::OutOfUniverse(c).into());
            }
            if seen.contains(c) {
                return Err(PartitionError::Overlap(c).into());
            }
            seen = seen.union(Family::single(c));
            family = family.union(Family::single(c));
        }
        families.push(family);
    }
    PowerRanking::new(universe, families)
}

impl PowerRanking {
    pub fn new(universe: Universe, classes: Vec<Family>) -> Result<Self> {
        validate_partition(universe, &classes)?;
        Ok(PowerRanking { universe, classes })
    }

    /// Skips validation in release builds; callers construct partitions by
    /// rearranging the classes of a valid ranking.
    pub(crate) fn from_parts(universe: Universe, classes: Vec<Family>) -> Self {
        debug_assert_eq!(validate_partition(universe, &classes), Ok(()));
        PowerRanking { universe, classes }
    }

    /// The ranking with every coalition in one class.
    pub fn indifferent(universe: Universe) -> Self {
        PowerRanking::from_parts(universe, vec![universe.power_set()])
    }

    /// `first ≻ everything else`.
    pub fn dichotomous(universe: Universe, top: Family) -> Result<Self> {
        PowerRanking::new(universe, vec![top, universe.power_set().difference(top)])
    }

    /// Puts each listed family in its own class, best first, and everything
    /// not listed in a final class (when non-empty).
    pub fn with_rest(universe: Universe, leading: &[Family]) -> Result<Self> {
        let used = leading.iter().fold(Family::EMPTY, |a, &f| a.union(f));
        let mut classes = leading.to_vec();
        let rest = universe.power_set().difference(used);
        if !rest.is_empty() {
            classes.push(rest);
        }
        PowerRanking::new(universe, classes)
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn classes(&self) -> &[Family] {
        &self.classes
    }

    /// Number of classes `l`.
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn best(&self) -> Family {
        self.classes[0]
    }

    pub fn worst(&self) -> Family {
        self.classes[self.classes.len() - 1]
    }

    /// 0-based index of the class holding `coalition`.
    pub fn class_index(&self, coalition: Coalition) -> usize {
        self.classes
            .iter()
            .position(|f| f.contains(coalition))
            .expect("partition covers the power set")
    }

    /// `Greater` when `a ≻ b`.
    pub fn compare(&self, a: Coalition, b: Coalition) -> Ordering {
        self.class_index(b).cmp(&self.class_index(a))
    }

    pub fn into_classes(self) -> Vec<Family> {
        self.classes
    }

    /// `≿_π`: every coalition `S` replaced by `π(S)`, classes kept in place.
    pub fn permute(&self, pi: &Permutation) -> PowerRanking {
        let classes = self
            .classes
            .iter()
            .map(|f| f.iter().map(|c| pi.apply_coalition(c)).collect())
            .collect();
        PowerRanking::from_parts(self.universe, classes)
    }
}

/// Same as [`PowerRanking::permute`].
pub fn apply_permutation(ranking: &PowerRanking, pi: &Permutation) -> PowerRanking {
    ranking.permute(pi)
}

fn validate_partition(universe: Universe, classes: &[Family]) -> Result<(), PartitionError> {
    if classes.is_empty() {
        return Err(PartitionError::NoClasses);
    }
    let all = universe.power_set();
    let mut seen = Family::EMPTY;
    for (k, &class) in classes.iter().enumerate() {
        if class.is_empty() {
            return Err(PartitionError::EmptyClass(k));
        }
        if let Some(c) = class.difference(all).iter().next() {
            return Err(PartitionError::OutOfUniverse(c));
        }
        if let Some(c) = class.intersection(seen).iter().next() {
            return Err(PartitionError::Overlap(c));
        }
        seen = seen.union(class);
    }
    match all.difference(seen).iter().next() {
        Some(c) => Err(PartitionError::Uncovered(c)),
        None => Ok(()),
    }
}

impl fmt::Display for PowerRanking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}",
            self.classes.iter().map(|c| format!("[{c}]")).join(" > ")
        )
    }
}

/// How `x` relates to `y` in a social ranking.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairRelation {
    Above,
    Tied,
    Below,
}

impl PairRelation {
    pub fn flip(self) -> Self {
        match self {
            PairRelation::Above => PairRelation::Below,
            PairRelation::Tied => PairRelation::Tied,
            PairRelation::Below => PairRelation::Above,
        }
    }

    /// `P`, `I`, or the reverse strict relation, as used in reports.
    pub fn symbol(self) -> &'static str {
        match self {
            PairRelation::Above => ">",
            PairRelation::Tied => "~",
            PairRelation::Below => "<",
        }
    }
}

/// A binary relation on individuals, as a set of ordered pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Relation {
    pairs: BTreeSet<(usize, usize)>,
}

impl Relation {
    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.pairs.contains(&(a, b))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn intersection(&self, other: &Relation) -> Relation {
        self.pairs.intersection(&other.pairs).copied().collect()
    }
}

impl FromIterator<(usize, usize)> for Relation {
    fn from_iter<I: IntoIterator<Item = (usize, usize)>>(iter: I) -> Self {
        Relation {
            pairs: iter.into_iter().collect(),
        }
    }
}

/// A weak order on the individuals, as classes best first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SocialRanking {
    universe: Universe,
    classes: Vec<Coalition>,
    rank: [u8; Universe::MAX],
}

impl SocialRanking {
    pub fn new(universe: Universe, classes: Vec<Coalition>) -> Result<Self> {
        let mut seen = Coalition::EMPTY;
        for (k, &c) in classes.iter().enumerate() {
            if c.is_empty() {
                return Err(PartitionError::EmptyClass(k).into());
            }
            if !c.is_subset(universe.grand()) {
                return Err(PartitionError::OutOfUniverse(c).into());
            }
            if !c.intersection(seen).is_empty() {
                return Err(PartitionError::Overlap(c.intersection(seen)).into());
            }
            seen = seen.union(c);
        }
        if seen != universe.grand() {
            return Err(PartitionError::Uncovered(universe.grand().difference(seen)).into());
        }
        Ok(SocialRanking::from_parts(universe, classes))
    }

    fn from_parts(universe: Universe, classes: Vec<Coalition>) -> Self {
        let mut rank = [0u8; Universe::MAX];
        for (k, c) in classes.iter().enumerate() {
            for x in c.members() {
                rank[x] = k as u8;
            }
        }
        SocialRanking {
            universe,
            classes,
            rank,
        }
    }

    /// Everyone in one class.
    pub fn indifferent(universe: Universe) -> Self {
        SocialRanking::from_parts(universe, vec![universe.grand()])
    }

    /// Buckets individuals by `cmp`, best first. `cmp(x, y) == Greater` means
    /// `x` is strictly better. `cmp` must be a total preorder.
    pub fn from_comparator(
        universe: Universe,
        mut cmp: impl FnMut(usize, usize) -> Ordering,
    ) -> Self {
        let mut order: Vec<usize> = universe.individuals().collect();
        order.sort_by(|&a, &b| cmp(b, a));
        let mut classes: Vec<Coalition> = Vec::new();
        let mut last: Option<usize> = None;
        for x in order {
            match last {
                Some(prev) if cmp(prev, x) == Ordering::Equal => {
                    let top = classes.last_mut().expect("a class was opened");
                    *top = top.with(x);
                }
                _ => classes.push(Coalition::singleton(x)),
            }
            last = Some(x);
        }
        SocialRanking::from_parts(universe, classes)
    }

    /// Buckets individuals by exact score equality, higher scores first.
    pub fn from_scores<K: Ord>(universe: Universe, score: impl Fn(usize) -> K) -> Self {
        let scores: Vec<K> = universe.individuals().map(score).collect();
        SocialRanking::from_comparator(universe, |a, b| scores[a].cmp(&scores[b]))
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn classes(&self) -> &[Coalition] {
        &self.classes
    }

    /// 0-based class index of `x`.
    pub fn rank_of(&self, x: usize) -> usize {
        self.rank[x] as usize
    }

    /// `x R y`.
    pub fn weakly_above(&self, x: usize, y: usize) -> bool {
        self.rank[x] <= self.rank[y]
    }

    /// `x P y`.
    pub fn strictly_above(&self, x: usize, y: usize) -> bool {
        self.rank[x] < self.rank[y]
    }

    /// `x I y`.
    pub fn indifferent_between(&self, x: usize, y: usize) -> bool {
        self.rank[x] == self.rank[y]
    }

    pub fn pair(&self, x: usize, y: usize) -> PairRelation {
        match self.rank[x].cmp(&self.rank[y]) {
            Ordering::Less => PairRelation::Above,
            Ordering::Equal => PairRelation::Tied,
            Ordering::Greater => PairRelation::Below,
        }
    }

    /// The full relation `R` as ordered pairs.
    pub fn relation(&self) -> Relation {
        let ind = self.universe.individuals();
        ind.clone()
            .cartesian_product(ind)
            .filter(|&(a, b)| self.weakly_above(a, b))
            .collect()
    }

    /// `P(R)`.
    pub fn strict_part(&self) -> Relation {
        self.relation()
            .iter()
            .filter(|&(a, b)| self.strictly_above(a, b))
            .collect()
    }

    /// `I(R)`.
    pub fn indifference_part(&self) -> Relation {
        self.relation()
            .iter()
            .filter(|&(a, b)| self.indifferent_between(a, b))
            .collect()
    }

    /// `R|_B`.
    pub fn restrict(&self, subset: &[usize]) -> Result<Relation> {
        for &x in subset {
            self.universe.check_individual(x)?;
        }
        Ok(subset
            .iter()
            .cartesian_product(subset)
            .filter(|&(&a, &b)| self.weakly_above(a, b))
            .map(|(&a, &b)| (a, b))
            .collect())
    }

    /// True when every class is a singleton.
    pub fn is_linear(&self) -> bool {
        self.classes.len() == self.universe.n()
    }
}

/// Same as [`SocialRanking::restrict`].
pub fn restrict(ranking: &SocialRanking, subset: &[usize]) -> Result<Relation> {
    ranking.restrict(subset)
}

/// Renders 1-indexed, e.g. `1 > 2 ~ 3`.
impl fmt::Display for SocialRanking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = self
            .classes
            .iter()
            .map(|c| c.members().map(|m| m + 1).join(" ~ "))
            .join(" > ");
        f.write_str(&text)
    }
}

/// A bijection on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        let mut hit = vec![false; n];
        for &image in &map {
            if image >= n || std::mem::replace(&mut hit[image], true) {
                return Err(Error::Permutation(n));
            }
        }
        Ok(Permutation { map })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            map: (0..n).collect(),
        }
    }

    /// Swaps `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut map: Vec<usize> = (0..n).collect();
        map.swap(a, b);
        Permutation { map }
    }

    /// All `n!` permutations, identity first.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        (0..n).permutations(n).map(|map| Permutation { map })
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn apply_coalition(&self, coalition: Coalition) -> Coalition {
        coalition.members().map(|x| self.map[x]).collect()
    }

    pub fn inverse(&self) -> Permutation {
        let mut map = vec![0; self.map.len()];
        for (x, &image) in self.map.iter().enumerate() {
            map[image] = x;
        }
        Permutation { map }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            map: other.map.iter().map(|&x| self.map[x]).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(members: &[usize]) -> Coalition {
        members.iter().copied().collect()
    }

    /// The worked example ranking, translated to 0-indexed individuals.
    fn example() -> PowerRanking {
        let u = Universe::new(3).unwrap();
        make_power_ranking(
            u,
            &[
                vec![c(&[0]), c(&[2]), c(&[0, 1])],
                vec![c(&[1])],
                vec![c(&[0, 2]), c(&[1, 2]), c(&[0, 1, 2]), c(&[])],
            ],
        )
        .unwrap()
    }

    #[test]
    fn example_is_valid_with_three_classes() {
        assert_eq!(example().len(), 3);
    }

    #[test]
    fn single_class_order() {
        let u = Universe::new(1).unwrap();
        let r = make_power_ranking(u, &[vec![c(&[]), c(&[0])]]).unwrap();
        assert_eq!(r.len(), 1);
    }

    #[test]
    fn overlap_is_rejected() {
        let u = Universe::new(2).unwrap();
        let err = make_power_ranking(
            u,
            &[
                vec![c(&[])],
                vec![c(&[]), c(&[0])],
                vec![c(&[1]), c(&[0, 1])],
            ],
        )
        .unwrap_err();
        assert_eq!(err, Error::Partition(PartitionError::Overlap(c(&[]))));
    }

    #[test]
    fn missing_and_empty_classes_are_rejected() {
        let u = Universe::new(2).unwrap();
        let err = make_power_ranking(u, &[vec![c(&[]), c(&[0])], vec![c(&[1])]]).unwrap_err();
        assert_eq!(err, Error::Partition(PartitionError::Uncovered(c(&[0, 1]))));
        let err = make_power_ranking(u, &[vec![], vec![c(&[])]]).unwrap_err();
        assert_eq!(err, Error::Partition(PartitionError::EmptyClass(0)));
        let err = make_power_ranking(u, &[vec![c(&[2])]]).unwrap_err();
        assert_eq!(
            err,
            Error::Partition(PartitionError::OutOfUniverse(c(&[2])))
        );
        assert!(make_power_ranking(u, &[]).is_err());
    }

    #[test]
    fn universe_bounds() {
        assert!(Universe::new(0).is_err());
        assert!(Universe::new(7).is_err());
        assert_eq!(Universe::new(6).unwrap().power_set().len(), 64);
    }

    #[test]
    fn members_containing_follows_the_example() {
        let r = example();
        assert_eq!(
            r.best().members_containing(0),
            Family::from_iter([c(&[0]), c(&[0, 1])])
        );
        assert_eq!(
            r.worst().members_containing(2),
            Family::from_iter([c(&[0, 2]), c(&[1, 2]), c(&[0, 1, 2])])
        );
        assert!(Family::EMPTY.members_containing(1).is_empty());
    }

    #[test]
    fn family_intersections() {
        let f = |cs: &[Coalition]| cs.iter().copied().collect::<Family>();
        assert_eq!(f(&[c(&[0]), c(&[0, 1])]).common_members(), Ok(c(&[0])));
        assert_eq!(f(&[c(&[0]), c(&[1])]).common_members(), Ok(c(&[])));
        assert_eq!(example().worst().common_members(), Ok(c(&[])));
        assert_eq!(Family::EMPTY.common_members(), Err(Error::EmptyFamily));
        let u = Universe::new(3).unwrap();
        assert_eq!(Family::EMPTY.intersection_or(u), u.grand());
    }

    #[test]
    fn subfamilies_are_complete() {
        let f = Family::from_bits(0b1011);
        let subs: Vec<_> = f.subfamilies().collect();
        assert_eq!(subs.len(), 8);
        assert_eq!(subs[0], f);
        assert_eq!(*subs.last().unwrap(), Family::EMPTY);
        assert!(subs.iter().all(|s| s.is_subset(f)));
    }

    fn chain() -> SocialRanking {
        let u = Universe::new(3).unwrap();
        SocialRanking::new(u, vec![c(&[0]), c(&[1]), c(&[2])]).unwrap()
    }

    #[test]
    fn restriction_of_a_chain() {
        let rel = chain().restrict(&[0, 2]).unwrap();
        let expect: Relation = [(0, 0), (2, 2), (0, 2)].into_iter().collect();
        assert_eq!(rel, expect);
        assert!(chain().restrict(&[]).unwrap().is_empty());
        assert_eq!(
            chain().restrict(&[0, 3]),
            Err(Error::Domain { index: 3, n: 3 })
        );
    }

    #[test]
    fn restriction_of_a_tie() {
        let u = Universe::new(3).unwrap();
        let r = SocialRanking::new(u, vec![c(&[0, 1]), c(&[2])]).unwrap();
        let rel = restrict(&r, &[0, 1]).unwrap();
        assert_eq!(rel.len(), 4);
        assert!(rel.contains(0, 1) && rel.contains(1, 0));
    }

    #[test]
    fn strict_and_indifference_parts_split_the_relation() {
        let u = Universe::new(3).unwrap();
        let r = SocialRanking::new(u, vec![c(&[0, 1]), c(&[2])]).unwrap();
        let p = r.strict_part();
        let i = r.indifference_part();
        assert!(p.intersection(&i).is_empty());
        assert_eq!(p.len() + i.len(), r.relation().len());
        assert_eq!(r.to_string(), "1 ~ 2 > 3");
    }

    #[test]
    fn social_ranking_validation() {
        let u = Universe::new(2).unwrap();
        assert!(SocialRanking::new(u, vec![c(&[0])]).is_err());
        assert!(SocialRanking::new(u, vec![c(&[0]), c(&[0, 1])]).is_err());
        assert!(SocialRanking::new(u, vec![c(&[0, 1]), c(&[])]).is_err());
    }

    #[test]
    fn permutation_action() {
        let r = example();
        let id = Permutation::identity(3);
        assert_eq!(r.permute(&id), r);
        let pi = Permutation::new(vec![1, 2, 0]).unwrap();
        assert_eq!(r.permute(&pi).permute(&pi.inverse()), r);
        let sigma = Permutation::transposition(3, 0, 2);
        assert_eq!(
            r.permute(&pi).permute(&sigma),
            r.permute(&sigma.compose(&pi))
        );
    }

    #[test]
    fn swapping_two_individuals_relabels() {
        let u = Universe::new(2).unwrap();
        let r = PowerRanking::with_rest(u, &[Family::single(c(&[0]))]).unwrap();
        let swapped = apply_permutation(&r, &Permutation::transposition(2, 0, 1));
        assert_eq!(swapped.best(), Family::single(c(&[1])));
        assert!(swapped.worst().contains(c(&[0])));
    }

    #[test]
    fn permutation_validation() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![0, 2]).is_err());
        assert_eq!(Permutation::all(3).count(), 6);
    }

    #[test]
    fn display_is_one_indexed() {
        assert_eq!(c(&[0, 2]).to_string(), "{1,3}");
        assert_eq!(c(&[]).to_string(), "{}");
        assert_eq!(chain().to_string(), "1 > 2 > 3");
    }
}
