//! Exhaustive enumeration of weak orders (ordered set partitions).
//!
//! Orders are built by placing elements `0, 1, .., m-1` one at a time: the
//! next element either joins one of the `c` existing classes or opens a new
//! class at one of the `c + 1` gaps. Each ordered partition has exactly one
//! such construction path, and the iterator walks the paths in lexicographic
//! order of the choice sequence, so the output order is fixed.

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::order::{Family, PowerRanking, Universe};

/// Default cap on the enumeration domain size `m` (`n = 3` gives `m = 8`).
pub const DEFAULT_MAX_DOMAIN: usize = 8;

/// Hard ceiling: class masks are `u64`.
const DOMAIN_CEILING: usize = 64;

/// Number of weak orders on an `m`-element set, `Σ_k k!·S(m, k)`.
pub fn ordered_bell(m: usize) -> u128 {
    // Stirling numbers of the second kind by the triangle recurrence.
    let mut row = vec![1u128];
    for i in 1..=m {
        let mut next = vec![0u128; i + 1];
        for k in 1..=i {
            let stay = if k < row.len() { k as u128 * row[k] } else { 0 };
            next[k] = row[k - 1] + stay;
        }
        row = next;
    }
    let mut factorial = 1u128;
    let mut total = 0u128;
    for (k, s) in row.iter().enumerate() {
        if k > 0 {
            factorial *= k as u128;
        }
        total += factorial * s;
    }
    total
}

/// Lazy stream of every weak order on `0..m`, each as its class masks, best first.
#[derive(Clone, Debug)]
pub struct WeakOrders {
    m: usize,
    classes: Vec<u64>,
    choice: Vec<usize>,
    classes_before: Vec<usize>,
    state: State,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum State {
    Fresh,
    Running,
    Done,
}

/// Every weak order on an `m`-element domain, refusing domains above `max_domain`.
pub fn enumerate_weak_orders(m: usize, max_domain: usize) -> Result<WeakOrders> {
    if m > max_domain {
        return Err(Error::Budget(format!(
            "domain of size {m} exceeds the enumeration limit {max_domain}"
        )));
    }
    WeakOrders::new(m)
}

impl WeakOrders {
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 || m > DOMAIN_CEILING {
            return Err(Error::Budget(format!(
                "domain size must be in 1..={DOMAIN_CEILING}, got {m}"
            )));
        }
        Ok(WeakOrders {
            m,
            classes: Vec::with_capacity(m),
            choice: vec![0; m],
            classes_before: vec![0; m],
            state: State::Fresh,
        })
    }

    pub fn domain_size(&self) -> usize {
        self.m
    }

    fn place(&mut self, element: usize, option: usize) {
        let c = self.classes.len();
        self.classes_before[element] = c;
        self.choice[element] = option;
        if option < c {
            self.classes[option] |= 1 << element;
        } else {
            self.classes.insert(option - c, 1 << element);
        }
    }

    fn unplace(&mut self, element: usize) {
        let c = self.classes_before[element];
        let option = self.choice[element];
        if option < c {
            self.classes[option] &= !(1 << element);
        } else {
            self.classes.remove(option - c);
        }
    }

    fn fill_from(&mut self, start: usize) {
        for element in start..self.m {
            self.place(element, 0);
        }
    }
}

impl Iterator for WeakOrders {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        match self.state {
            State::Done => return None,
            State::Fresh => {
                self.fill_from(0);
                self.state = State::Running;
                return Some(self.classes.clone());
            }
            State::Running => {}
        }
        for element in (0..self.m).rev() {
            self.unplace(element);
            let options = 2 * self.classes_before[element] + 1;
            let next = self.choice[element] + 1;
            if next < options {
                self.place(element, next);
                self.fill_from(element + 1);
                return Some(self.classes.clone());
            }
        }
        self.state = State::Done;
        None
    }
}

/// Spreads a weak order on `0..members.len()` onto the listed coalitions.
pub(crate) fn spread(local: &[u64], members: &[crate::order::Coalition]) -> Vec<Family> {
    local
        .iter()
        .map(|&mask| {
            members
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &c)| c)
                .collect()
        })
        .collect()
}

/// Every ordered partition of `family` into non-empty subfamilies, best first.
pub fn ordered_partitions(family: Family) -> impl Iterator<Item = Vec<Family>> {
    let members: Vec<_> = family.iter().collect();
    let orders = WeakOrders::new(members.len().max(1)).expect("family fits in u64");
    let empty = family.is_empty();
    orders
        .take_while(move |_| !empty)
        .map(move |local| spread(&local, &members))
}

/// Every weak order on `2^X`, in enumeration order.
pub fn power_rankings(
    universe: Universe,
    max_domain: usize,
) -> Result<impl Iterator<Item = PowerRanking>> {
    let orders = enumerate_weak_orders(universe.coalition_count(), max_domain)?;
    Ok(orders.map(move |classes| {
        PowerRanking::from_parts(
            universe,
            classes.into_iter().map(Family::from_bits).collect(),
        )
    }))
}

/// A seeded uniform sample (without replacement) of `count` weak orders on
/// `2^X`, returned in enumeration order.
pub fn sample_power_rankings(
    universe: Universe,
    count: usize,
    seed: u64,
    max_domain: usize,
) -> Result<Vec<PowerRanking>> {
    let total = ordered_bell(universe.coalition_count());
    let total = usize::try_from(total)
        .map_err(|_| Error::Budget(format!("{total} weak orders cannot be indexed")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picks = index::sample(&mut rng, total, count.min(total)).into_vec();
    picks.sort_unstable();
    let mut picks = picks.into_iter().peekable();
    let mut out = Vec::with_capacity(count.min(total));
    for (i, ranking) in power_rankings(universe, max_domain)?.enumerate() {
        match picks.peek() {
            Some(&p) if p == i => {
                out.push(ranking);
                picks.next();
            }
            Some(_) => {}
            None => break,
        }
    }
    Ok(out)
}

/// All dichotomous orders `Σ1 ≻ Σ2` on `2^X`.
pub fn dichotomous_rankings(universe: Universe) -> impl Iterator<Item = PowerRanking> {
    let all = universe.power_set();
    all.subfamilies()
        .filter(move |&top| !top.is_empty() && top != all)
        .map(move |top| PowerRanking::from_parts(universe, vec![top, all.difference(top)]))
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;

    #[test]
    fn small_domains() {
        assert_eq!(
            WeakOrders::new(1).unwrap().collect::<Vec<_>>(),
            vec![vec![1]]
        );
        let two: Vec<_> = WeakOrders::new(2).unwrap().collect();
        assert_eq!(two, vec![vec![0b11], vec![0b10, 0b01], vec![0b01, 0b10]]);
    }

    #[test]
    fn first_order_is_total_indifference() {
        let first = WeakOrders::new(5).unwrap().next().unwrap();
        assert_eq!(first, vec![0b11111]);
    }

    #[test]
    fn outputs_are_distinct_partitions() {
        let seen: HashSet<_> = WeakOrders::new(5)
            .unwrap()
            .inspect(|classes| {
                assert!(classes.iter().all(|&c| c != 0));
                assert_eq!(classes.iter().fold(0, |a, &c| a | c), 0b11111);
                assert_eq!(classes.iter().map(|c| c.count_ones()).sum::<u32>(), 5);
            })
            .collect();
        assert_eq!(seen.len(), 541);
    }

    #[test]
    fn limit_is_enforced() {
        assert!(matches!(enumerate_weak_orders(9, 8), Err(Error::Budget(_))));
        assert!(enumerate_weak_orders(9, 9).is_ok());
        assert!(WeakOrders::new(0).is_err());
    }

    #[test]
    fn ordered_bell_small_values() {
        let values: Vec<u128> = (0..=8).map(ordered_bell).collect();
        assert_eq!(values, vec![1, 1, 3, 13, 75, 541, 4683, 47293, 545835]);
    }

    #[test]
    fn ordered_partitions_of_a_family() {
        let family = Family::from_bits(0b1010_0001);
        let parts: Vec<_> = ordered_partitions(family).collect();
        assert_eq!(parts.len(), 13);
        for p in &parts {
            assert_eq!(p.iter().fold(Family::EMPTY, |a, &f| a.union(f)), family);
        }
        assert_eq!(ordered_partitions(Family::EMPTY).count(), 0);
    }

    #[test]
    fn sampling_is_seeded_and_sorted() {
        let u = Universe::new(2).unwrap();
        let a = sample_power_rankings(u, 10, 7, 8).unwrap();
        let b = sample_power_rankings(u, 10, 7, 8).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 10);
        let all = sample_power_rankings(u, 1000, 1, 8).unwrap();
        assert_eq!(all.len(), 75);
    }

    #[test]
    fn dichotomous_count() {
        let u = Universe::new(2).unwrap();
        assert_eq!(dichotomous_rankings(u).count(), 14);
        assert!(dichotomous_rankings(u).all(|r| r.len() == 2));
    }
}
