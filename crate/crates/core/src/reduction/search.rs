//! Deterministic beam search over elementary moves until some entry is a
//! unit; the unit-pivot reduction then finishes the word.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::coeff_rings::{RingDescriptor, Scalar};
use crate::groups::{self, token_from_shape, token_shapes, FormKind, GroupWord, Token};
use crate::monoid_ring::{MonoidRing, Poly};
use crate::par;
use crate::ring::Ring;

use super::local::unit_entry_word;
use super::row::{check_isotropy, check_size};
use super::transcript::{finish, Procedure, ReductionTranscript};
use super::ReductionError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub beam_width: usize,
    pub max_depth: usize,
    /// Orders the parameter pool, and so breaks ties between moves.
    pub seed: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { beam_width: 24, max_depth: 6, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SearchOutcome<E> {
    Found(ReductionTranscript<E>),
    /// No unit entry within budget; says nothing about the row.
    Exhausted { explored: usize },
}

impl<E> SearchOutcome<E> {
    pub fn found(&self) -> Option<&ReductionTranscript<E>> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            SearchOutcome::Exhausted { .. } => None,
        }
    }
}

/// Distance-to-unit heuristic for polynomial entries: the degree carried by
/// non-constant terms, plus one when the constant term is missing.
pub fn poly_cost(f: &Poly<Scalar>) -> u64 {
    if f.is_empty() {
        return 64;
    }
    let mut cost = 0u64;
    let mut has_constant = false;
    for (e, _) in f.terms() {
        let d: i64 = e.iter().sum();
        if d == 0 {
            has_constant = true;
        } else {
            cost += d as u64;
        }
    }
    cost + u64::from(!has_constant)
}

/// Heuristic for coefficient-ring entries: units cost nothing.
pub fn scalar_cost(r: &RingDescriptor, x: &Scalar) -> u64 {
    if r.is_unit(x) {
        0
    } else if r.is_zero(x) {
        2
    } else {
        1
    }
}

/// Every `c x^m` with `c` a nonzero coefficient and `m` a monoid member of
/// coordinate sum at most `degree`.
pub fn monomial_pool(mr: &MonoidRing<RingDescriptor>, degree: i64) -> Result<Vec<Poly<Scalar>>, ReductionError> {
    let coeffs = mr
        .coeffs()
        .elements()
        .ok_or_else(|| ReductionError::Unsupported("orbit search needs a finite coefficient ring".into()))?;
    let members = mr.members_up_to(degree)?;
    let mut pool = Vec::new();
    for m in &members {
        for c in coeffs.iter().filter(|c| !mr.coeffs().is_zero(c)) {
            pool.push(mr.monomial(m, c.clone())?);
        }
    }
    Ok(pool)
}

struct Node<E> {
    row: Vec<E>,
    tokens: Vec<Token<E>>,
}

fn score<E>(row: &[E], cost: &(dyn Fn(&E) -> u64 + Sync)) -> u64 {
    let costs: Vec<u64> = row.iter().map(cost).collect();
    8 * costs.iter().copied().min().unwrap_or(0) + costs.iter().sum::<u64>()
}

pub fn bounded_orbit_search<R: Ring>(
    r: &R,
    form: FormKind,
    u: &[R::Elem],
    pool: &[R::Elem],
    cost: &(dyn Fn(&R::Elem) -> u64 + Sync),
    budget: SearchBudget,
) -> Result<SearchOutcome<R::Elem>, ReductionError> {
    check_size(form, u)?;
    check_isotropy(r, form, u)?;
    let mut pool = pool.to_vec();
    pool.shuffle(&mut ChaCha8Rng::seed_from_u64(budget.seed));
    let moves: Vec<((usize, usize), usize)> =
        token_shapes(form).into_iter().flat_map(|s| (0..pool.len()).map(move |k| (s, k))).collect();

    let finish_from = |node: &Node<R::Elem>| -> Result<SearchOutcome<R::Elem>, ReductionError> {
        let mut word = GroupWord::from_tokens(form, node.tokens.clone());
        word.extend(unit_entry_word(r, form, &node.row)?);
        Ok(SearchOutcome::Found(finish(r, Procedure::Search, u, word, None)?))
    };

    let start = Node { row: u.to_vec(), tokens: Vec::new() };
    if start.row.iter().any(|x| r.is_unit(x)) {
        return finish_from(&start);
    }
    let mut seen: HashSet<String> = HashSet::new();
    seen.insert(format!("{:?}", start.row));
    let mut beam = vec![start];
    let mut explored = 0usize;
    for _ in 0..budget.max_depth {
        let expanded: Vec<Vec<(u64, bool, Node<R::Elem>)>> = par::map(&beam, |node| {
            moves
                .iter()
                .map(|(shape, k)| {
                    let t = token_from_shape(*shape, pool[*k].clone());
                    let mut row = node.row.clone();
                    groups::apply_token(r, form, &mut row, &t);
                    let hit = row.iter().any(|x| r.is_unit(x));
                    let mut tokens = node.tokens.clone();
                    tokens.push(t);
                    (score(&row, cost), hit, Node { row, tokens })
                })
                .collect()
        });
        let mut candidates: Vec<(u64, bool, Node<R::Elem>)> = expanded.into_iter().flatten().collect();
        explored += candidates.len();
        if let Some(pos) = candidates.iter().position(|c| c.1) {
            return finish_from(&candidates[pos].2);
        }
        // Stable sort keeps generation order among equal scores.
        candidates.sort_by_key(|c| c.0);
        beam = Vec::with_capacity(budget.beam_width);
        for (_, _, node) in candidates {
            if beam.len() == budget.beam_width {
                break;
            }
            if seen.insert(format!("{:?}", node.row)) {
                beam.push(node);
            }
        }
        if beam.is_empty() {
            break;
        }
    }
    Ok(SearchOutcome::Exhausted { explored })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::AffineMonoid;

    #[test]
    fn trivial_and_small_cases() {
        let z4 = RingDescriptor::integers_mod(4).unwrap();
        let pool: Vec<Scalar> = (1..4).map(|v| z4.int(v)).collect();
        let cost = |x: &Scalar| scalar_cost(&z4, x);
        let e1: Vec<Scalar> = [1, 0, 0, 0].iter().map(|&v| z4.int(v)).collect();
        let out = bounded_orbit_search(&z4, FormKind::symplectic(2), &e1, &pool, &cost, SearchBudget::default()).unwrap();
        assert!(out.found().unwrap().word.is_empty());
        let u: Vec<Scalar> = [3, 2, 2, 2].iter().map(|&v| z4.int(v)).collect();
        let out = bounded_orbit_search(&z4, FormKind::symplectic(2), &u, &pool, &cost, SearchBudget::default()).unwrap();
        assert!(out.found().unwrap().replay(&z4).unwrap().ok());
    }

    #[test]
    fn numerical_monoid_row() {
        let f2 = RingDescriptor::integers_mod(2).unwrap();
        let mr = MonoidRing::new(f2.clone(), AffineMonoid::new(vec![vec![2], vec![3]]).unwrap()).unwrap();
        let pool = monomial_pool(&mr, 3).unwrap();
        let t2 = mr.monomial(&[2], f2.one()).unwrap();
        let t3 = mr.monomial(&[3], f2.one()).unwrap();
        let u = vec![mr.add(&mr.one(), &t2), t3, mr.zero(), mr.zero()];
        let out = bounded_orbit_search(&mr, FormKind::symplectic(2), &u, &pool, &poly_cost, SearchBudget::default())
            .unwrap();
        let a = out.clone();
        let b = bounded_orbit_search(&mr, FormKind::symplectic(2), &u, &pool, &poly_cost, SearchBudget::default())
            .unwrap();
        assert_eq!(a, b);
        if let Some(t) = out.found() {
            assert!(t.replay(&mr).unwrap().ok());
        }
    }
}
