//! The truncated Demazure-Lusztig operators T_0, ..., T_r acting on
//! quasi-polynomials supported on one W-orbit, their inverses, the
//! commuting Y-operator family built from them, and the attached scalar
//! data: root multiplicities, the torus action, kappa factors, and the
//! eigenvalue weights gamma.

use crate::quasipoly::QuasiPolynomial;
use crate::scalars::{
    eta, floor_even, floor_odd, is_even_integer, is_integer, is_odd_integer, pow_i64,
    rational_floor, ParamSpec, Rat, TorusPoint,
};
use crate::weyl::{min_alcove_rep, AffineRoot, AffineWeylElement, Orbit, SignedPermutation};
use num::BigInt;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum OperatorError {
    #[error("exponent {exponent} lies outside the orbit with basepoint {basepoint}")]
    OrbitMismatch { exponent: String, basepoint: String },
    #[error("torus point violates the orbit constraint: {0}")]
    InvalidTorusPoint(String),
}

/// Everything a representation needs: the parameters, the orbit the
/// operators act on, and a torus point satisfying that orbit's
/// constraints t^{alpha_j-dual} = 1 for every j in the facet.
#[derive(Debug, Clone)]
pub struct RepContext {
    pub params: ParamSpec,
    pub orbit: Orbit,
    pub t: TorusPoint,
}

impl RepContext {
    pub fn new(params: ParamSpec, orbit: Orbit, t: TorusPoint) -> Result<Self, OperatorError> {
        assert_eq!(params.rank, orbit.rank(), "rank mismatch");
        assert_eq!(params.rank, t.rank(), "rank mismatch");
        let r = params.rank;
        for &j in &orbit.facet {
            let ok = if j == 0 {
                // alpha_0-dual = (-eps_1, 1/2): q^{1/2} t_1^{-1} = 1
                t.coords[0] == params.sqrt_q
            } else if j == r {
                t.coords[r - 1] == Rat::from_integer(BigInt::from(1))
            } else {
                t.coords[j - 1] == t.coords[j]
            };
            if !ok {
                return Err(OperatorError::InvalidTorusPoint(constraint_text(j, r)));
            }
        }
        Ok(RepContext { params, orbit, t })
    }

    pub fn rank(&self) -> usize {
        self.params.rank
    }

    /// The torus point g.t for this context's t.
    pub fn torus_act(&self, g: &AffineWeylElement) -> TorusPoint {
        torus_act(&self.params, g, &self.t)
    }

    fn check_support(&self, p: &QuasiPolynomial) -> Result<(), OperatorError> {
        assert_eq!(p.rank(), self.rank(), "rank mismatch");
        for y in p.support() {
            let (_, c) = min_alcove_rep(y);
            if c != self.orbit.basepoint {
                return Err(OperatorError::OrbitMismatch {
                    exponent: point_text(y),
                    basepoint: point_text(&self.orbit.basepoint),
                });
            }
        }
        Ok(())
    }
}

fn constraint_text(j: usize, r: usize) -> String {
    if j == 0 {
        "t_1 = q^(1/2)".to_string()
    } else if j == r {
        format!("t_{} = 1", r)
    } else {
        format!("t_{} = t_{}", j, j + 1)
    }
}

/// Human-readable torus constraints imposed by an orbit's facet, one per
/// facet node; empty for a regular orbit.
pub fn torus_constraints(orbit: &Orbit) -> Vec<String> {
    let r = orbit.rank();
    orbit.facet.iter().map(|&j| constraint_text(j, r)).collect()
}

fn point_text(y: &[Rat]) -> String {
    let mut s = String::from("(");
    for (i, c) in y.iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        let _ = write!(s, "{}", c);
    }
    s.push(')');
    s
}

/// The Hecke parameter attached to an affine root: short roots carry k;
/// long roots carry k_r at even level and k_0 at odd level. With
/// `half = true` the value for the halved root is returned instead (u_r /
/// u_0 for long roots; unchanged for short roots, whose half is not a
/// root of the nonreduced extension).
pub fn multiplicity(a: &AffineRoot, half: bool, params: &ParamSpec) -> Rat {
    assert!(a.has_valid_gradient(), "not a type-C affine root: {:?}", a);
    let support: Vec<i64> = a.gradient.iter().copied().filter(|&x| x != 0).collect();
    match support.len() {
        2 => params.k.clone(),
        1 => match (a.level.rem_euclid(2) == 0, half) {
            (true, false) => params.kr.clone(),
            (true, true) => params.ur.clone(),
            (false, false) => params.k0.clone(),
            (false, true) => params.u0.clone(),
        },
        _ => unreachable!("gradient validity checked above"),
    }
}

/// The affine Weyl action on the torus: for g = tau(lambda) o w,
/// (g.t)^{eps_i} = q^{lambda_i} t^{w^{-1} eps_i}.
pub fn torus_act(params: &ParamSpec, g: &AffineWeylElement, t: &TorusPoint) -> TorusPoint {
    let r = g.rank();
    assert_eq!(r, t.rank(), "rank mismatch");
    let winv = g.finite.inverse();
    let coords = (0..r)
        .map(|i| {
            let (target, sign) = winv.image_of_basis(i);
            let base = pow_i64(&t.coords[target], i64::from(sign));
            params.q_power(2 * g.translation[i]) * base
        })
        .collect();
    TorusPoint { coords }
}

fn floor_to_i64(b: BigInt) -> i64 {
    i64::try_from(b).expect("truncation exponent exceeds i64 range")
}

/// Accumulates coeff * ((1 - z^{-m})/(1 - z)) * x^y into `out`, where z is
/// the monomial q^{q_half_per_step/2} x^step. The expansion is the exact
/// finite geometric sum: -(z^{-1} + ... + z^{-m}) for m >= 1, and
/// 1 + z + ... + z^{|m|-1} for m <= -1, so exactly |m| terms are produced.
fn geometric_sum_into(
    out: &mut QuasiPolynomial,
    coeff: &Rat,
    y: &[Rat],
    step: &[i64],
    q_half_per_step: i64,
    m: i64,
    params: &ParamSpec,
) {
    let shifted = |s: i64| -> Vec<Rat> {
        y.iter()
            .zip(step)
            .map(|(a, &d)| a + Rat::from_integer(BigInt::from(s * d)))
            .collect()
    };
    if m >= 1 {
        for s in 1..=m {
            let c = coeff * params.q_power(-s * q_half_per_step);
            out.add_term(shifted(-s), -c);
        }
    } else {
        for s in 0..(-m) {
            let c = coeff * params.q_power(s * q_half_per_step);
            out.add_term(shifted(s), c);
        }
    }
}

/// Truncated divided difference for a middle index 1 <= i < r, with
/// truncation exponent floor(y_i - y_{i+1}) over the step eps_i - eps_{i+1}.
pub fn nabla_mid(i: usize, p: &QuasiPolynomial) -> QuasiPolynomial {
    let r = p.rank();
    assert!(i >= 1 && i < r, "middle index {} out of range 1..{}", i, r);
    let mut step = vec![0i64; r];
    step[i - 1] = 1;
    step[i] = -1;
    let mut out = QuasiPolynomial::zero(r);
    // the step carries no q, so the parameters are irrelevant here
    let dummy = dummy_params(r);
    for (y, c) in p.iter() {
        let m = floor_to_i64(rational_floor(&(&y[i - 1] - &y[i])));
        geometric_sum_into(&mut out, c, y, &step, 0, m, &dummy);
    }
    out
}

/// Even truncated divided difference at the last node: truncation exponent
/// floor_even(2 y_r)/2 over the step 2 eps_r.
pub fn nabla_r_even(p: &QuasiPolynomial) -> QuasiPolynomial {
    let r = p.rank();
    assert!(r >= 1);
    let mut step = vec![0i64; r];
    step[r - 1] = 2;
    let mut out = QuasiPolynomial::zero(r);
    let dummy = dummy_params(r);
    for (y, c) in p.iter() {
        let two_yr = &y[r - 1] + &y[r - 1];
        let m = floor_to_i64(floor_even(&two_yr) / BigInt::from(2));
        geometric_sum_into(&mut out, c, y, &step, 0, m, &dummy);
    }
    out
}

/// Odd truncated divided difference at the last node: the geometric sum at
/// exponent (floor_odd(2 y_r) + 1)/2, then a uniform shift by eps_r.
pub fn nabla_r_odd(p: &QuasiPolynomial) -> QuasiPolynomial {
    let r = p.rank();
    assert!(r >= 1);
    let mut step = vec![0i64; r];
    step[r - 1] = 2;
    let mut pre = QuasiPolynomial::zero(r);
    let dummy = dummy_params(r);
    for (y, c) in p.iter() {
        let two_yr = &y[r - 1] + &y[r - 1];
        let m = floor_to_i64((floor_odd(&two_yr) + BigInt::from(1)) / BigInt::from(2));
        geometric_sum_into(&mut pre, c, y, &step, 0, m, &dummy);
    }
    let mut mu = vec![0i64; r];
    mu[r - 1] = 1;
    pre.shift(&mu, 0, &dummy)
}

/// Even truncated divided difference at the affine node: step -2 eps_1
/// with one factor q per step, truncation exponent floor_even(-2 y_1)/2.
pub fn nabla_0_even(params: &ParamSpec, p: &QuasiPolynomial) -> QuasiPolynomial {
    let r = p.rank();
    let mut step = vec![0i64; r];
    step[0] = -2;
    let mut out = QuasiPolynomial::zero(r);
    for (y, c) in p.iter() {
        let minus_two_y1 = -(&y[0] + &y[0]);
        let m = floor_to_i64(floor_even(&minus_two_y1) / BigInt::from(2));
        geometric_sum_into(&mut out, c, y, &step, 2, m, params);
    }
    out
}

/// Odd truncated divided difference at the affine node: the geometric sum
/// at exponent (floor_odd(-2 y_1) + 1)/2, then a uniform multiplication by
/// q^{1/2} x_1^{-1}.
pub fn nabla_0_odd(params: &ParamSpec, p: &QuasiPolynomial) -> QuasiPolynomial {
    let r = p.rank();
    let mut step = vec![0i64; r];
    step[0] = -2;
    let mut pre = QuasiPolynomial::zero(r);
    for (y, c) in p.iter() {
        let minus_two_y1 = -(&y[0] + &y[0]);
        let m = floor_to_i64((floor_odd(&minus_two_y1) + BigInt::from(1)) / BigInt::from(2));
        geometric_sum_into(&mut pre, c, y, &step, 2, m, params);
    }
    let mut mu = vec![0i64; r];
    mu[0] = -1;
    pre.shift(&mu, 1, params)
}

fn dummy_params(rank: usize) -> ParamSpec {
    let one = Rat::from_integer(BigInt::from(1));
    ParamSpec {
        rank,
        sqrt_q: one.clone(),
        k0: one.clone(),
        u0: one.clone(),
        k: one.clone(),
        kr: one.clone(),
        ur: one,
    }
}

fn kminus(v: &Rat) -> Rat {
    v - v.recip()
}

/// The finite Demazure-Lusztig operator T_i, 1 <= i <= r.
pub fn t_finite(
    i: usize,
    ctx: &RepContext,
    p: &QuasiPolynomial,
) -> Result<QuasiPolynomial, OperatorError> {
    let r = ctx.rank();
    assert!(
        i >= 1 && i <= r,
        "finite index {} out of range 1..={}",
        i,
        r
    );
    ctx.check_support(p)?;
    let params = &ctx.params;
    let mut out = QuasiPolynomial::zero(r);
    if i < r {
        for (y, c) in p.iter() {
            let diff = &y[i - 1] - &y[i];
            let factor = if is_integer(&diff) {
                params.k.clone()
            } else {
                num_one()
            };
            let mut sy = y.clone();
            sy.swap(i - 1, i);
            out.add_term(sy, c * factor);
        }
        out.add_assign(&nabla_mid(i, p).scale(&kminus(&params.k)));
    } else {
        for (y, c) in p.iter() {
            let two_yr = &y[r - 1] + &y[r - 1];
            let factor = if is_even_integer(&two_yr) {
                params.kr.clone()
            } else if is_odd_integer(&two_yr) {
                params.ur.clone()
            } else {
                num_one()
            };
            let mut sy = y.clone();
            sy[r - 1] = -sy[r - 1].clone();
            out.add_term(sy, c * factor);
        }
        out.add_assign(&nabla_r_even(p).scale(&kminus(&params.kr)));
        out.add_assign(&nabla_r_odd(p).scale(&kminus(&params.ur)));
    }
    Ok(out)
}

/// The affine Demazure-Lusztig operator T_0 for this context's orbit: the
/// reflection term carries the torus coefficient (g_y . t)^{eps_1} with
/// g_y the canonical minimal representative of y.
pub fn t_affine(ctx: &RepContext, p: &QuasiPolynomial) -> Result<QuasiPolynomial, OperatorError> {
    let r = ctx.rank();
    let params = &ctx.params;
    let mut out = QuasiPolynomial::zero(r);
    for (y, c) in p.iter() {
        let (gy, basepoint) = min_alcove_rep(y);
        if basepoint != ctx.orbit.basepoint {
            return Err(OperatorError::OrbitMismatch {
                exponent: point_text(y),
                basepoint: point_text(&ctx.orbit.basepoint),
            });
        }
        let two_y1 = &y[0] + &y[0];
        let factor = if is_even_integer(&two_y1) {
            params.k0.clone()
        } else if is_odd_integer(&two_y1) {
            params.u0.clone()
        } else {
            num_one()
        };
        let torus_coeff = ctx.torus_act(&gy).coords[0].clone();
        let mut sy = y.clone();
        sy[0] = -sy[0].clone();
        out.add_term(sy, c * factor * torus_coeff);
    }
    out.add_assign(&nabla_0_even(params, p).scale(&kminus(&params.k0)));
    out.add_assign(&nabla_0_odd(params, p).scale(&kminus(&params.u0)));
    Ok(out)
}

fn num_one() -> Rat {
    Rat::from_integer(BigInt::from(1))
}

/// Uniform dispatch over all generators: j = 0 is the affine operator,
/// j >= 1 the finite ones.
pub fn t_op(
    j: usize,
    ctx: &RepContext,
    p: &QuasiPolynomial,
) -> Result<QuasiPolynomial, OperatorError> {
    if j == 0 {
        t_affine(ctx, p)
    } else {
        t_finite(j, ctx, p)
    }
}

/// The Hecke parameter of generator j: k_0, k, or k_r.
pub fn hecke_parameter(j: usize, params: &ParamSpec) -> Rat {
    if j == 0 {
        params.k0.clone()
    } else if j == params.rank {
        params.kr.clone()
    } else {
        params.k.clone()
    }
}

/// T_j^{-1} = T_j - (kappa_j - kappa_j^{-1}) by the quadratic relation.
pub fn t_inverse(
    j: usize,
    ctx: &RepContext,
    p: &QuasiPolynomial,
) -> Result<QuasiPolynomial, OperatorError> {
    let shift = kminus(&hecke_parameter(j, &ctx.params));
    Ok(t_op(j, ctx, p)?.sub(&p.scale(&shift)))
}

/// The single-truncation form of T_j that the operators collapse to when
/// k_0 = u_0 = k_r = u_r: the reflection term weighted by
/// kappa_j^{chi_Z(alpha_j-bar(y))} plus (kappa_j - kappa_j^{-1}) times the
/// plain-floor divided difference over the coroot of alpha_j.
pub fn t_collapsed(
    j: usize,
    ctx: &RepContext,
    p: &QuasiPolynomial,
) -> Result<QuasiPolynomial, OperatorError> {
    let r = ctx.rank();
    assert!(j <= r, "generator index {} out of range 0..={}", j, r);
    ctx.check_support(p)?;
    if j >= 1 && j < r {
        return t_finite(j, ctx, p);
    }
    let params = &ctx.params;
    let kappa = hecke_parameter(j, params);
    let mut refl = QuasiPolynomial::zero(r);
    let mut diff = QuasiPolynomial::zero(r);
    for (y, c) in p.iter() {
        let wall = if j == 0 {
            -(&y[0] + &y[0])
        } else {
            &y[r - 1] + &y[r - 1]
        };
        let factor = if is_integer(&wall) {
            kappa.clone()
        } else {
            num_one()
        };
        if j == 0 {
            let (gy, _) = min_alcove_rep(y);
            let torus_coeff = ctx.torus_act(&gy).coords[0].clone();
            let mut sy = y.clone();
            sy[0] = -sy[0].clone();
            refl.add_term(sy, c * factor * torus_coeff);
            let mut step = vec![0i64; r];
            step[0] = -1;
            let m = floor_to_i64(rational_floor(&wall));
            geometric_sum_into(&mut diff, c, y, &step, 1, m, params);
        } else {
            let mut sy = y.clone();
            sy[r - 1] = -sy[r - 1].clone();
            refl.add_term(sy, c * factor);
            let mut step = vec![0i64; r];
            step[r - 1] = 1;
            let m = floor_to_i64(rational_floor(&wall));
            geometric_sum_into(&mut diff, c, y, &step, 0, m, params);
        }
    }
    Ok(refl.add(&diff.scale(&kminus(&kappa))))
}

/// The i-th Y-operator: the telescoping product
/// T_{i-1}^{-1} ... T_1^{-1} T_0 T_1 ... T_{r-1} T_r T_{r-1} ... T_i,
/// applied right to left.
pub fn y_op(
    i: usize,
    ctx: &RepContext,
    p: &QuasiPolynomial,
) -> Result<QuasiPolynomial, OperatorError> {
    let r = ctx.rank();
    assert!(i >= 1 && i <= r, "Y index {} out of range 1..={}", i, r);
    let mut q = p.clone();
    for j in i..=r {
        q = t_op(j, ctx, &q)?;
    }
    for j in (1..r).rev() {
        q = t_op(j, ctx, &q)?;
    }
    q = t_affine(ctx, &q)?;
    for j in 1..i {
        q = t_inverse(j, ctx, &q)?;
    }
    Ok(q)
}

/// The orbit's spectral basepoint on the torus: coordinate i is
/// (k_0 k_r)^{-chi_e(2 c_i)} (u_0 u_r)^{chi_o(2 c_i)} k^{n_i} with the
/// eta-count n_i of integer wall values against the other coordinates.
pub fn s_frak(ctx: &RepContext) -> TorusPoint {
    let params = &ctx.params;
    let c = &ctx.orbit.basepoint;
    let r = ctx.rank();
    let coords = (1..=r)
        .map(|i| {
            let ci = &c[i - 1];
            let two_ci = ci + ci;
            let parity_factor = if is_even_integer(&two_ci) {
                (&params.k0 * &params.kr).recip()
            } else if is_odd_integer(&two_ci) {
                &params.u0 * &params.ur
            } else {
                num_one()
            };
            let mut n = 0i64;
            for j in 1..=r {
                let cj = &c[j - 1];
                if j > i {
                    n += eta(&(ci - cj)) + eta(&(ci + cj));
                } else if j < i {
                    n += eta(&(cj + ci)) - eta(&(cj - ci));
                }
            }
            parity_factor * pow_i64(&params.k, n)
        })
        .collect();
    TorusPoint { coords }
}

/// The Y-eigenvalue weight: gamma_i(y) = ((g_y . (s-frak * t))^{eps_i})^{-1}.
pub fn gamma(ctx: &RepContext, i: usize, y: &[Rat]) -> Result<Rat, OperatorError> {
    let r = ctx.rank();
    assert!(i >= 1 && i <= r, "gamma index {} out of range 1..={}", i, r);
    let (gy, basepoint) = min_alcove_rep(y);
    if basepoint != ctx.orbit.basepoint {
        return Err(OperatorError::OrbitMismatch {
            exponent: point_text(y),
            basepoint: point_text(&ctx.orbit.basepoint),
        });
    }
    let st = s_frak(ctx).mul(&ctx.t);
    let moved = torus_act(&ctx.params, &gy, &st);
    Ok(moved.coords[i - 1].recip())
}

/// The scalar by which the ordered product of T's over a reduced word of a
/// finite Weyl element acts on the basepoint monomial: the product over
/// the element's finite inversions alpha of the multiplicity of alpha when
/// alpha(c) is even, and the inverse halved multiplicity when odd.
pub fn kappa_scalar(ctx: &RepContext, w: &SignedPermutation) -> Rat {
    let r = ctx.rank();
    assert_eq!(r, w.rank(), "rank mismatch");
    let c = &ctx.orbit.basepoint;
    let mut out = num_one();
    for alpha in positive_finite_roots(r) {
        let image = w.act_i64(&alpha.gradient);
        let image_negative = match image.iter().find(|&&x| x != 0) {
            Some(&x) => x < 0,
            None => unreachable!("roots are nonzero"),
        };
        if !image_negative {
            continue;
        }
        let value = alpha.eval(c);
        if is_even_integer(&value) {
            out *= multiplicity(&alpha, false, &ctx.params);
        } else if is_odd_integer(&value) {
            out *= multiplicity(&alpha, true, &ctx.params).recip();
        }
    }
    out
}

/// The partial solution of the torus constraints for an orbit: entries
/// forced by constraint chains anchored at node r (value 1, propagated
/// down) or at node 0 (value q^{1/2}, propagated up); unanchored
/// coordinates are left empty. A chain can never touch both anchors, since
/// that would force the basepoint to satisfy both c_1 = 1/2 and c_i = 0
/// along one equality chain.
fn torus_chain_solution(params: &ParamSpec, orbit: &Orbit) -> Vec<Option<Rat>> {
    let r = orbit.rank();
    let facet: std::collections::BTreeSet<usize> = orbit.facet.iter().copied().collect();
    let mut coords: Vec<Option<Rat>> = vec![None; r];
    if facet.contains(&r) {
        coords[r - 1] = Some(num_one());
        let mut j = r - 1;
        while j >= 1 && facet.contains(&j) {
            coords[j - 1] = coords[j].clone();
            j -= 1;
        }
    }
    if facet.contains(&0) {
        coords[0] = Some(params.sqrt_q.clone());
        let mut j = 1;
        while j < r && facet.contains(&j) {
            coords[j] = coords[j - 1].clone();
            j += 1;
        }
    }
    coords
}

/// The unique torus point satisfying the orbit's constraints, when the
/// constraints force every coordinate; `None` when free directions remain.
pub fn forced_torus_point(params: &ParamSpec, orbit: &Orbit) -> Option<TorusPoint> {
    let coords: Option<Vec<Rat>> = torus_chain_solution(params, orbit).into_iter().collect();
    coords.map(|coords| TorusPoint::new(coords).expect("forced values are nonzero"))
}

/// A torus point satisfying the orbit's constraints, with the free
/// directions supplied by `fill` (called with the 0-based coordinate index;
/// the value must be nonzero). Coordinates tied by an unanchored equality
/// chain copy the first filled coordinate of their chain.
pub fn fill_torus_point(
    params: &ParamSpec,
    orbit: &Orbit,
    mut fill: impl FnMut(usize) -> Rat,
) -> TorusPoint {
    let r = orbit.rank();
    let facet: std::collections::BTreeSet<usize> = orbit.facet.iter().copied().collect();
    let mut coords = torus_chain_solution(params, orbit);
    for i in 0..r {
        if coords[i].is_none() {
            coords[i] = if i >= 1 && facet.contains(&i) {
                coords[i - 1].clone()
            } else {
                Some(fill(i))
            };
        }
    }
    let coords: Vec<Rat> = coords.into_iter().map(|c| c.expect("all filled")).collect();
    TorusPoint::new(coords).expect("fill values must be nonzero")
}

/// The finite positive roots as level-0 affine roots.
pub fn positive_finite_roots(rank: usize) -> Vec<AffineRoot> {
    let mut out = vec![];
    for i in 0..rank {
        let mut v = vec![0i64; rank];
        v[i] = 2;
        out.push(AffineRoot::new(v, 0));
        for j in (i + 1)..rank {
            for sj in [1i64, -1] {
                let mut v = vec![0i64; rank];
                v[i] = 1;
                v[j] = sj;
                out.push(AffineRoot::new(v, 0));
            }
        }
    }
    out
}
