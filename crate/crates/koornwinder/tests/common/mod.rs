//! Shared oracles for the integration suites. Everything here recomputes
//! group-theoretic data from first principles (root enumeration, subword
//! expansion) so it stays independent of the library's own algorithms.

#![allow(dead_code)]

use koornwinder::scalars::Rat;
use koornwinder::weyl::{reduced_word, simple_reflection, AffineRoot, AffineWeylElement};
use num::{Signed, Zero};
use std::collections::BTreeSet;

/// All finite type-C root vectors: +-eps_i +- eps_j (i < j) and +-2 eps_i.
pub fn all_finite_roots(rank: usize) -> Vec<Vec<i64>> {
    let mut out = vec![];
    for i in 0..rank {
        for sign in [2i64, -2] {
            let mut v = vec![0; rank];
            v[i] = sign;
            out.push(v);
        }
        for j in (i + 1)..rank {
            for (si, sj) in [(1i64, 1i64), (1, -1), (-1, 1), (-1, -1)] {
                let mut v = vec![0; rank];
                v[i] = si;
                v[j] = sj;
                out.push(v);
            }
        }
    }
    out
}

/// Positive affine roots with level at most `max_level`: the finite
/// positives at level 0, every root at levels 1..=max_level.
pub fn positive_affine_roots_up_to(rank: usize, max_level: i64) -> Vec<AffineRoot> {
    let mut out = vec![];
    for gradient in all_finite_roots(rank) {
        for level in 0..=max_level {
            let a = AffineRoot {
                gradient: gradient.clone(),
                level,
            };
            if a.is_positive() {
                out.push(a);
            }
        }
    }
    out
}

/// Length as the size of the inversion set {a in Phi^+ : g.a in Phi^-},
/// enumerated directly over levels bounded by the translation part.
pub fn brute_force_length(g: &AffineWeylElement) -> usize {
    let max_t = g.translation.iter().map(|x| x.abs()).max().unwrap_or(0);
    let bound = 2 * max_t + 1;
    positive_affine_roots_up_to(g.rank(), bound)
        .iter()
        .filter(|a| !g.act_on_root(a).is_positive())
        .count()
}

/// Number of positive affine roots taking a strictly negative value at y;
/// this equals the length of the minimal alcove representative of y.
pub fn brute_force_negative_root_count(y: &[Rat]) -> usize {
    let max_abs = y
        .iter()
        .map(|c| {
            let f = c.abs().ceil().to_integer();
            i64::try_from(f).expect("coordinate too large for oracle")
        })
        .max()
        .unwrap_or(0);
    let bound = 2 * max_abs + 1;
    positive_affine_roots_up_to(y.len(), bound)
        .iter()
        .filter(|a| a.eval(y) < Rat::zero())
        .count()
}

/// Bruhat order by the subword criterion: u <= v iff u is a product of
/// some subsequence of one fixed reduced word of v.
pub fn subword_bruhat_leq(u: &AffineWeylElement, v: &AffineWeylElement) -> bool {
    let rank = v.rank();
    let word = reduced_word(v);
    let mut reachable: BTreeSet<AffineWeylElement> = BTreeSet::new();
    reachable.insert(AffineWeylElement::identity(rank));
    for &j in &word {
        let s = simple_reflection(j, rank);
        let extended: Vec<AffineWeylElement> = reachable.iter().map(|x| x.compose(&s)).collect();
        reachable.extend(extended);
    }
    reachable.contains(u)
}

/// Every group element of length at most `max_len`, by breadth-first
/// multiplication of generators with deduplication.
pub fn elements_up_to_length(rank: usize, max_len: usize) -> Vec<AffineWeylElement> {
    let mut seen: BTreeSet<AffineWeylElement> = BTreeSet::new();
    let mut frontier = vec![AffineWeylElement::identity(rank)];
    seen.insert(AffineWeylElement::identity(rank));
    for _ in 0..max_len {
        let mut next = vec![];
        for g in &frontier {
            for j in 0..=rank {
                let h = simple_reflection(j, rank).compose(g);
                if seen.insert(h.clone()) {
                    next.push(h);
                }
            }
        }
        frontier = next;
    }
    seen.into_iter().collect()
}
