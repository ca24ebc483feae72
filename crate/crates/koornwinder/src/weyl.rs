//! The affine Weyl group of type C_r: signed permutations extended by the
//! translation lattice, acting on points and affine roots, with length,
//! reduced words, Bruhat order, minimal alcove representatives, and orbit
//! data for the fundamental domain 0 <= y_r <= ... <= y_1 <= 1/2.

use crate::scalars::{rat_int, Rat};
use num::Zero;
use std::collections::BTreeSet;

/// An element of the hyperoctahedral group S_r x (+-1)^r. Coordinates are
/// 0-based: the element sends eps_i to `signs[i] * eps_{perm[i]}`, so the
/// action on a point is `(w.y)[perm[i]] = signs[i] * y[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
}

impl SignedPermutation {
    pub fn identity(rank: usize) -> Self {
        SignedPermutation {
            perm: (0..rank).collect(),
            signs: vec![1; rank],
        }
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    pub fn is_identity(&self) -> bool {
        self.signs.iter().all(|&s| s == 1) && self.perm.iter().enumerate().all(|(i, &p)| p == i)
    }

    /// `self` after `other`: `(self.compose(other)).y = self.(other.y)`.
    pub fn compose(&self, other: &SignedPermutation) -> SignedPermutation {
        let r = self.rank();
        assert_eq!(r, other.rank(), "rank mismatch");
        let mut perm = vec![0; r];
        let mut signs = vec![0i8; r];
        for i in 0..r {
            perm[i] = self.perm[other.perm[i]];
            signs[i] = other.signs[i] * self.signs[other.perm[i]];
        }
        SignedPermutation { perm, signs }
    }

    pub fn inverse(&self) -> SignedPermutation {
        let r = self.rank();
        let mut perm = vec![0; r];
        let mut signs = vec![0i8; r];
        for i in 0..r {
            perm[self.perm[i]] = i;
            signs[self.perm[i]] = self.signs[i];
        }
        SignedPermutation { perm, signs }
    }

    pub fn act_rat(&self, y: &[Rat]) -> Vec<Rat> {
        let r = self.rank();
        assert_eq!(r, y.len(), "dimension mismatch");
        let mut out = vec![Rat::zero(); r];
        for i in 0..r {
            let v = if self.signs[i] == 1 {
                y[i].clone()
            } else {
                -y[i].clone()
            };
            out[self.perm[i]] = v;
        }
        out
    }

    pub fn act_i64(&self, v: &[i64]) -> Vec<i64> {
        let r = self.rank();
        assert_eq!(r, v.len(), "dimension mismatch");
        let mut out = vec![0; r];
        for i in 0..r {
            out[self.perm[i]] = i64::from(self.signs[i]) * v[i];
        }
        out
    }

    /// Where the i-th basis co-weight goes: `w.eps_i = sign * eps_target`.
    pub fn image_of_basis(&self, i: usize) -> (usize, i8) {
        (self.perm[i], self.signs[i])
    }

    /// Every element of the group, all `2^r * r!` of them, in a
    /// deterministic order.
    pub fn all(rank: usize) -> Vec<SignedPermutation> {
        let mut perms = vec![];
        let mut current: Vec<usize> = (0..rank).collect();
        permutations_rec(&mut current, 0, &mut perms);
        perms.sort();
        let mut out = vec![];
        for perm in &perms {
            for mask in 0..(1u32 << rank) {
                let signs = (0..rank)
                    .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
                    .collect();
                out.push(SignedPermutation {
                    perm: perm.clone(),
                    signs,
                });
            }
        }
        out
    }
}

fn permutations_rec(current: &mut Vec<usize>, start: usize, out: &mut Vec<Vec<usize>>) {
    if start == current.len() {
        out.push(current.clone());
        return;
    }
    for i in start..current.len() {
        current.swap(start, i);
        permutations_rec(current, start + 1, out);
        current.swap(start, i);
    }
}

/// An element g = tau(lambda) o w of the affine Weyl group, acting by
/// g.y = w.y + lambda.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineWeylElement {
    pub translation: Vec<i64>,
    pub finite: SignedPermutation,
}

impl AffineWeylElement {
    pub fn identity(rank: usize) -> Self {
        AffineWeylElement {
            translation: vec![0; rank],
            finite: SignedPermutation::identity(rank),
        }
    }

    pub fn rank(&self) -> usize {
        self.finite.rank()
    }

    pub fn is_identity(&self) -> bool {
        self.translation.iter().all(|&x| x == 0) && self.finite.is_identity()
    }

    pub fn from_translation(lambda: Vec<i64>) -> Self {
        let w = SignedPermutation::identity(lambda.len());
        AffineWeylElement {
            translation: lambda,
            finite: w,
        }
    }

    pub fn from_finite(w: SignedPermutation) -> Self {
        AffineWeylElement {
            translation: vec![0; w.rank()],
            finite: w,
        }
    }

    /// `self` after `other`: (tau(l)w)(tau(m)v) = tau(l + w.m)(wv).
    pub fn compose(&self, other: &AffineWeylElement) -> AffineWeylElement {
        let wm = self.finite.act_i64(&other.translation);
        let translation = self
            .translation
            .iter()
            .zip(&wm)
            .map(|(a, b)| a + b)
            .collect();
        AffineWeylElement {
            translation,
            finite: self.finite.compose(&other.finite),
        }
    }

    /// g^{-1} = tau(-w^{-1} lambda) w^{-1}.
    pub fn inverse(&self) -> AffineWeylElement {
        let winv = self.finite.inverse();
        let translation = winv.act_i64(&self.translation).iter().map(|x| -x).collect();
        AffineWeylElement {
            translation,
            finite: winv,
        }
    }

    pub fn act_on_point(&self, y: &[Rat]) -> Vec<Rat> {
        let mut out = self.finite.act_rat(y);
        for (o, &l) in out.iter_mut().zip(&self.translation) {
            *o += rat_int(l);
        }
        out
    }

    /// (tau(lambda)w).(alpha, level) = (w.alpha, level - (w.alpha)(lambda)).
    pub fn act_on_root(&self, a: &AffineRoot) -> AffineRoot {
        let gradient = self.finite.act_i64(&a.gradient);
        let pairing: i64 = gradient
            .iter()
            .zip(&self.translation)
            .map(|(g, l)| g * l)
            .sum();
        AffineRoot {
            gradient,
            level: a.level - pairing,
        }
    }

    /// Product of the simple reflections named by `word`, leftmost letter
    /// applied last to a point.
    pub fn from_word(word: &[usize], rank: usize) -> AffineWeylElement {
        let mut g = AffineWeylElement::identity(rank);
        for &j in word {
            g = g.compose(&simple_reflection(j, rank));
        }
        g
    }
}

/// An affine root (gradient, level), evaluating as y -> <gradient, y> + level.
/// The gradient is a type-C root vector: +-eps_i +- eps_j or +-2 eps_i.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineRoot {
    pub gradient: Vec<i64>,
    pub level: i64,
}

impl AffineRoot {
    pub fn new(gradient: Vec<i64>, level: i64) -> Self {
        let a = AffineRoot { gradient, level };
        debug_assert!(a.has_valid_gradient(), "not a type-C root vector: {:?}", a);
        a
    }

    /// The simple affine roots: alpha_0 = (-2 eps_1, 1), alpha_i =
    /// eps_i - eps_{i+1} for 0 < i < r, alpha_r = 2 eps_r.
    pub fn simple(j: usize, rank: usize) -> Self {
        assert!(
            j <= rank,
            "simple root index {} out of range 0..={}",
            j,
            rank
        );
        let mut gradient = vec![0i64; rank];
        let level;
        if j == 0 {
            gradient[0] = -2;
            level = 1;
        } else if j == rank {
            gradient[rank - 1] = 2;
            level = 0;
        } else {
            gradient[j - 1] = 1;
            gradient[j] = -1;
            level = 0;
        }
        AffineRoot { gradient, level }
    }

    pub fn has_valid_gradient(&self) -> bool {
        let nonzero: Vec<i64> = self.gradient.iter().copied().filter(|&x| x != 0).collect();
        match nonzero.as_slice() {
            [a] => a.abs() == 2,
            [a, b] => a.abs() == 1 && b.abs() == 1,
            _ => false,
        }
    }

    /// Positive iff level > 0, or level = 0 and the gradient lies in the
    /// standard positive system (first nonzero entry positive).
    pub fn is_positive(&self) -> bool {
        if self.level != 0 {
            return self.level > 0;
        }
        match self.gradient.iter().find(|&&x| x != 0) {
            Some(&x) => x > 0,
            None => panic!("zero gradient is not a root"),
        }
    }

    pub fn negate(&self) -> AffineRoot {
        AffineRoot {
            gradient: self.gradient.iter().map(|x| -x).collect(),
            level: -self.level,
        }
    }

    pub fn eval(&self, y: &[Rat]) -> Rat {
        assert_eq!(self.gradient.len(), y.len(), "dimension mismatch");
        let mut out = rat_int(self.level);
        for (&g, yi) in self.gradient.iter().zip(y) {
            out += rat_int(g) * yi;
        }
        out
    }
}

/// s_j for 0 <= j <= r: s_i swaps coordinates i, i+1 (1 <= i < r), s_r
/// negates the last coordinate, and s_0 = tau(eps_1) o s_{eps_1} acts by
/// y -> (1 - y_1, y_2, ..., y_r).
pub fn simple_reflection(j: usize, rank: usize) -> AffineWeylElement {
    assert!(j <= rank, "generator index {} out of range 0..={}", j, rank);
    let mut w = SignedPermutation::identity(rank);
    let mut translation = vec![0i64; rank];
    if j == 0 {
        w.signs[0] = -1;
        translation[0] = 1;
    } else if j == rank {
        w.signs[rank - 1] = -1;
    } else {
        w.perm.swap(j - 1, j);
    }
    AffineWeylElement {
        translation,
        finite: w,
    }
}

/// Whether left multiplication by s_j shortens g, i.e. g^{-1}.alpha_j is
/// a negative affine root.
pub fn has_left_descent(g: &AffineWeylElement, j: usize) -> bool {
    let a = g.inverse().act_on_root(&AffineRoot::simple(j, g.rank()));
    !a.is_positive()
}

fn first_left_descent(g: &AffineWeylElement) -> Option<usize> {
    (0..=g.rank()).find(|&j| has_left_descent(g, j))
}

/// A reduced word j_1 ... j_m with g = s_{j_1} o ... o s_{j_m}, obtained by
/// stripping the first left descent (scanning j = 0, 1, ..., r) until the
/// identity remains.
pub fn reduced_word(g: &AffineWeylElement) -> Vec<usize> {
    let rank = g.rank();
    let mut word = vec![];
    let mut current = g.clone();
    while let Some(j) = first_left_descent(&current) {
        word.push(j);
        current = simple_reflection(j, rank).compose(&current);
    }
    assert!(
        current.is_identity(),
        "descent stripping did not reach identity"
    );
    word
}

pub fn length(g: &AffineWeylElement) -> usize {
    reduced_word(g).len()
}

/// The minimal-length g with g.c = y for c in the closed fundamental
/// alcove; returns (g, c). Greedy: while some simple root is strictly
/// negative at the current point, reflect at the first such wall.
pub fn min_alcove_rep(y: &[Rat]) -> (AffineWeylElement, Vec<Rat>) {
    let rank = y.len();
    let mut g = AffineWeylElement::identity(rank);
    let mut point = y.to_vec();
    'outer: loop {
        for j in 0..=rank {
            if AffineRoot::simple(j, rank).eval(&point) < Rat::zero() {
                let s = simple_reflection(j, rank);
                point = s.act_on_point(&point);
                g = g.compose(&s);
                continue 'outer;
            }
        }
        return (g, point);
    }
}

/// Bruhat order on the affine Weyl group, by the standard recursion on a
/// left descent of the larger element.
pub fn bruhat_leq(u: &AffineWeylElement, v: &AffineWeylElement) -> bool {
    assert_eq!(u.rank(), v.rank(), "rank mismatch");
    if u == v {
        return true;
    }
    if length(u) >= length(v) {
        return false;
    }
    let j = first_left_descent(v).expect("longer element must have a descent");
    let s = simple_reflection(j, v.rank());
    let sv = s.compose(v);
    if has_left_descent(u, j) {
        bruhat_leq(&s.compose(u), &sv)
    } else {
        bruhat_leq(u, &sv)
    }
}

/// The W-orbit of a point, named by its unique representative in the
/// closed fundamental alcove together with the facet that representative
/// lies on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    /// The orbit's alcove representative c, with 0 <= c_r <= ... <= c_1 <= 1/2.
    pub basepoint: Vec<Rat>,
    /// J = {j in 0..=r : alpha_j(c) = 0}, sorted.
    pub facet: Vec<usize>,
}

impl Orbit {
    pub fn rank(&self) -> usize {
        self.basepoint.len()
    }

    /// The finite part I = J intersect {1, ..., r} of the facet.
    pub fn interior_facet(&self) -> Vec<usize> {
        self.facet.iter().copied().filter(|&j| j >= 1).collect()
    }
}

pub fn orbit_of(y: &[Rat]) -> Orbit {
    let (_, basepoint) = min_alcove_rep(y);
    let rank = y.len();
    let facet = (0..=rank)
        .filter(|&j| AffineRoot::simple(j, rank).eval(&basepoint).is_zero())
        .collect();
    Orbit { basepoint, facet }
}

/// Points below `y`: all z in the same orbit with g_z <= g_y in Bruhat
/// order. Computed as the subword closure of one fixed reduced word of g_y
/// applied to the basepoint; returned in the deterministic order
/// (length of g_z, then lexicographic), so the basepoint comes first and
/// `y` last among maximal entries.
pub fn lower_set(y: &[Rat]) -> Vec<Vec<Rat>> {
    let rank = y.len();
    let (g, c) = min_alcove_rep(y);
    let word = reduced_word(&g);
    let mut elements: BTreeSet<AffineWeylElement> = BTreeSet::new();
    elements.insert(AffineWeylElement::identity(rank));
    for &j in &word {
        let s = simple_reflection(j, rank);
        let extended: Vec<AffineWeylElement> = elements.iter().map(|u| u.compose(&s)).collect();
        elements.extend(extended);
    }
    let points: BTreeSet<Vec<Rat>> = elements.iter().map(|u| u.act_on_point(&c)).collect();
    let mut out: Vec<(usize, Vec<Rat>)> = points
        .into_iter()
        .map(|z| {
            let (gz, _) = min_alcove_rep(&z);
            (length(&gz), z)
        })
        .collect();
    out.sort();
    out.into_iter().map(|(_, z)| z).collect()
}

/// All points y of the orbit with length(g_y) <= max_len, in the
/// deterministic order (length of g_y, then lexicographic). A breadth-first
/// sweep by simple reflections from the basepoint reaches exactly these
/// points: every point at minimal-representative length m appears after m
/// steps via a reduced word of g_y, and no point appears earlier than its
/// length.
pub fn orbit_points_up_to_length(orbit: &Orbit, max_len: usize) -> Vec<Vec<Rat>> {
    let rank = orbit.rank();
    let mut points: BTreeSet<Vec<Rat>> = BTreeSet::new();
    points.insert(orbit.basepoint.clone());
    for _ in 0..max_len {
        let reflected: Vec<Vec<Rat>> = points
            .iter()
            .flat_map(|y| (0..=rank).map(move |j| simple_reflection(j, rank).act_on_point(y)))
            .collect();
        points.extend(reflected);
    }
    let mut out: Vec<(usize, Vec<Rat>)> = points
        .into_iter()
        .map(|z| {
            let (gz, _) = min_alcove_rep(&z);
            (length(&gz), z)
        })
        .collect();
    out.sort();
    out.into_iter().map(|(_, z)| z).collect()
}

/// The partial order on points: z <= y iff both lie in one W-orbit and
/// g_z <= g_y in Bruhat order.
pub fn point_leq(z: &[Rat], y: &[Rat]) -> bool {
    let (gz, cz) = min_alcove_rep(z);
    let (gy, cy) = min_alcove_rep(y);
    cz == cy && bruhat_leq(&gz, &gy)
}
