//! Seeded randomized verification of the operator identities: quadratic
//! (Hecke) relations, finite and affine braid relations, Y-commutativity
//! and triangularity, the polynomial-representation reduction on the
//! integer orbit, the single-truncation collapse at equal parameters, and
//! the cyclic-vector scalar identity over the finite Weyl group. Each
//! check reports per-trial failures instead of stopping at the first.

use crate::epoly::polyrep;
use crate::operators::{
    fill_torus_point, gamma, hecke_parameter, kappa_scalar, t_collapsed, t_op, y_op, OperatorError,
    RepContext,
};
use crate::quasipoly::QuasiPolynomial;
use crate::scalars::{ParamSpec, Rat, TorusPoint};
use crate::weyl::{lower_set, orbit_of, reduced_word, AffineWeylElement, SignedPermutation};
use num::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Outcome of one named check: how many trials ran, which failed, and an
/// optional note (e.g. why a check is vacuous at this rank).
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub name: String,
    pub trials: usize,
    pub failures: Vec<String>,
    pub note: Option<String>,
}

impl CheckReport {
    fn new(name: &str) -> Self {
        CheckReport {
            name: name.to_string(),
            trials: 0,
            failures: Vec::new(),
            note: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let note = match &self.note {
            Some(n) => format!(" [{}]", n),
            None => String::new(),
        };
        let detail = match self.failures.first() {
            Some(f) => format!(" first failure: {}", f),
            None => String::new(),
        };
        format!(
            "{} {} ({} trials, {} failures){}{}",
            status,
            self.name,
            self.trials,
            self.failures.len(),
            note,
            detail
        )
    }
}

/// A uniformly random reduced fraction with denominator at most `max_den`
/// and absolute value at most `max_abs`.
pub fn random_rational(rng: &mut impl Rng, max_den: i64, max_abs: i64) -> Rat {
    let den = rng.gen_range(1..=max_den);
    let num = rng.gen_range(-max_abs * den..=max_abs * den);
    Rat::new(BigInt::from(num), BigInt::from(den))
}

fn random_nonzero_rational(rng: &mut impl Rng, max_den: i64, max_abs: i64) -> Rat {
    loop {
        let v = random_rational(rng, max_den, max_abs);
        if !num::Zero::is_zero(&v) {
            return v;
        }
    }
}

/// A random exponent with denominators bounded by 8, kept small so lower
/// sets stay desk-sized.
pub fn random_point(rng: &mut impl Rng, rank: usize) -> Vec<Rat> {
    (0..rank).map(|_| random_rational(rng, 8, 2)).collect()
}

/// A random parameter specialization with small nonzero rational values.
pub fn random_params(rng: &mut impl Rng, rank: usize) -> ParamSpec {
    let mut draw = |_: usize| random_nonzero_rational(rng, 5, 4);
    ParamSpec::new(rank, draw(0), draw(1), draw(2), draw(3), draw(4), draw(5))
        .expect("drawn values are nonzero")
}

/// A context on the orbit of `y` with a random torus point satisfying the
/// orbit's constraints.
pub fn random_context_at(rng: &mut impl Rng, params: &ParamSpec, y: &[Rat]) -> RepContext {
    let orbit = orbit_of(y);
    let t = fill_torus_point(params, &orbit, |_| random_nonzero_rational(rng, 5, 4));
    RepContext::new(params.clone(), orbit, t).expect("filled point satisfies constraints")
}

fn apply_word(
    ctx: &RepContext,
    word: &[usize],
    p: &QuasiPolynomial,
) -> Result<QuasiPolynomial, OperatorError> {
    let mut out = p.clone();
    for &j in word.iter().rev() {
        out = t_op(j, ctx, &out)?;
    }
    Ok(out)
}

/// T_j^2 = (kappa_j - kappa_j^{-1}) T_j + 1 for every generator, on random
/// quasi-monomials over random orbits.
pub fn check_hecke(params: &ParamSpec, rng: &mut impl Rng, trials: usize) -> CheckReport {
    let mut report = CheckReport::new("hecke");
    let r = params.rank;
    for _ in 0..trials {
        report.trials += 1;
        let y = random_point(rng, r);
        let ctx = random_context_at(rng, params, &y);
        let p = QuasiPolynomial::mono(y.clone());
        for j in 0..=r {
            let kap = hecke_parameter(j, params);
            let shift = &kap - kap.recip();
            let tp = match t_op(j, &ctx, &p) {
                Ok(v) => v,
                Err(e) => {
                    report.failures.push(format!("T_{} at {:?}: {}", j, y, e));
                    continue;
                }
            };
            let ttp = t_op(j, &ctx, &tp).expect("support stays in orbit");
            if ttp != tp.scale(&shift).add(&p) {
                report
                    .failures
                    .push(format!("quadratic relation of T_{} at {:?}", j, y));
            }
        }
    }
    report
}

/// The braid relations among the finite generators: order 3 between
/// neighbors below r, order 4 between r-1 and r, and commutation at
/// distance two or more. Vacuous at rank 1.
pub fn check_braid_finite(params: &ParamSpec, rng: &mut impl Rng, trials: usize) -> CheckReport {
    let mut report = CheckReport::new("braid-finite");
    let r = params.rank;
    if r < 2 {
        report.note = Some("rank 1 has no finite braid pairs".to_string());
        return report;
    }
    let mut pairs: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for i in 1..(r - 1) {
        pairs.push((vec![i, i + 1, i], vec![i + 1, i, i + 1]));
    }
    pairs.push((vec![r - 1, r, r - 1, r], vec![r, r - 1, r, r - 1]));
    for i in 1..=r {
        for j in (i + 2)..=r {
            pairs.push((vec![i, j], vec![j, i]));
        }
    }
    for _ in 0..trials {
        report.trials += 1;
        let y = random_point(rng, r);
        let ctx = random_context_at(rng, params, &y);
        let p = QuasiPolynomial::mono(y.clone());
        for (left, right) in &pairs {
            let a = apply_word(&ctx, left, &p).expect("orbit preserved");
            let b = apply_word(&ctx, right, &p).expect("orbit preserved");
            if a != b {
                report
                    .failures
                    .push(format!("braid {:?} vs {:?} at {:?}", left, right, y));
            }
        }
    }
    report
}

/// The affine braid relations: order 4 between the affine node and node 1,
/// commutation between the affine node and nodes 2..r. Vacuous at rank 1,
/// where the affine diagram has an infinite bond.
pub fn check_braid_affine(params: &ParamSpec, rng: &mut impl Rng, trials: usize) -> CheckReport {
    let mut report = CheckReport::new("braid-affine");
    let r = params.rank;
    if r < 2 {
        report.note = Some("rank 1 has no affine braid relation".to_string());
        return report;
    }
    let mut pairs: Vec<(Vec<usize>, Vec<usize>)> = vec![(vec![0, 1, 0, 1], vec![1, 0, 1, 0])];
    for j in 2..=r {
        pairs.push((vec![0, j], vec![j, 0]));
    }
    for _ in 0..trials {
        report.trials += 1;
        let y = random_point(rng, r);
        let ctx = random_context_at(rng, params, &y);
        let p = QuasiPolynomial::mono(y.clone());
        for (left, right) in &pairs {
            let a = apply_word(&ctx, left, &p).expect("orbit preserved");
            let b = apply_word(&ctx, right, &p).expect("orbit preserved");
            if a != b {
                report
                    .failures
                    .push(format!("affine braid {:?} vs {:?} at {:?}", left, right, y));
            }
        }
    }
    report
}

/// [Y_i, Y_j] = 0 on random quasi-monomials.
pub fn check_y_commute(params: &ParamSpec, rng: &mut impl Rng, trials: usize) -> CheckReport {
    let mut report = CheckReport::new("y-commute");
    let r = params.rank;
    if r < 2 {
        report.note = Some("rank 1 has a single Y-operator".to_string());
        return report;
    }
    for _ in 0..trials {
        report.trials += 1;
        let y = random_point(rng, r);
        let ctx = random_context_at(rng, params, &y);
        let p = QuasiPolynomial::mono(y.clone());
        let i = rng.gen_range(1..=r);
        let j = loop {
            let j = rng.gen_range(1..=r);
            if j != i {
                break j;
            }
        };
        let ij =
            y_op(i, &ctx, &y_op(j, &ctx, &p).expect("orbit preserved")).expect("orbit preserved");
        let ji =
            y_op(j, &ctx, &y_op(i, &ctx, &p).expect("orbit preserved")).expect("orbit preserved");
        if ij != ji {
            report
                .failures
                .push(format!("[Y_{}, Y_{}] != 0 at {:?}", i, j, y));
        }
    }
    report
}

/// Triangularity of each Y-operator: the image of a quasi-monomial is
/// supported on the lower set of its exponent, with leading coefficient
/// exactly gamma_i(y).
pub fn check_y_leading(params: &ParamSpec, rng: &mut impl Rng, trials: usize) -> CheckReport {
    let mut report = CheckReport::new("y-leading");
    let r = params.rank;
    for _ in 0..trials {
        report.trials += 1;
        let y = random_point(rng, r);
        let ctx = random_context_at(rng, params, &y);
        let p = QuasiPolynomial::mono(y.clone());
        let allowed = lower_set(&y);
        for i in 1..=r {
            let image = y_op(i, &ctx, &p).expect("orbit preserved");
            for (exp, _) in image.iter() {
                if !allowed.contains(exp) {
                    report.failures.push(format!(
                        "Y_{} maps x^{:?} outside its lower set (to {:?})",
                        i, y, exp
                    ));
                }
            }
            let lead = image.coeff(&y);
            let expected = gamma(&ctx, i, &y).expect("y lies in its orbit");
            if lead != expected {
                report.failures.push(format!(
                    "leading coefficient of Y_{} at {:?} is not gamma",
                    i, y
                ));
            }
        }
    }
    report
}

/// On the integer orbit with t = 1, every T_j agrees with the classical
/// polynomial-representation closed form.
pub fn check_poly_reduction(params: &ParamSpec, rng: &mut impl Rng, trials: usize) -> CheckReport {
    let mut report = CheckReport::new("poly-reduction");
    let r = params.rank;
    let zero = vec![Rat::from_integer(BigInt::from(0)); r];
    let ctx = RepContext::new(params.clone(), orbit_of(&zero), TorusPoint::one(r))
        .expect("t = 1 satisfies the integer-orbit constraints");
    for _ in 0..trials {
        report.trials += 1;
        let y: Vec<Rat> = (0..r)
            .map(|_| Rat::from_integer(BigInt::from(rng.gen_range(-3i64..=3))))
            .collect();
        let p = QuasiPolynomial::mono(y.clone());
        for i in 1..=r {
            let quasi = t_op(i, &ctx, &p).expect("integer orbit preserved");
            let classical = polyrep::t_finite(i, params, &p);
            if quasi != classical {
                report
                    .failures
                    .push(format!("T_{} classical mismatch at {:?}", i, y));
            }
        }
        let quasi = t_op(0, &ctx, &p).expect("integer orbit preserved");
        let classical = polyrep::t_affine(params, &p);
        if quasi != classical {
            report
                .failures
                .push(format!("T_0 classical mismatch at {:?}", y));
        }
    }
    report
}

/// With k_0 = u_0 = k_r = u_r, each T_j equals its single-truncation form.
/// The check collapses the given parameters onto k_r before running.
pub fn check_collapse(params: &ParamSpec, rng: &mut impl Rng, trials: usize) -> CheckReport {
    let mut report = CheckReport::new("collapse");
    let r = params.rank;
    let shared = params.kr.clone();
    let collapsed = ParamSpec::new(
        r,
        params.sqrt_q.clone(),
        shared.clone(),
        shared.clone(),
        params.k.clone(),
        shared.clone(),
        shared,
    )
    .expect("nonzero parameters stay nonzero");
    for _ in 0..trials {
        report.trials += 1;
        let y = random_point(rng, r);
        let ctx = random_context_at(rng, &collapsed, &y);
        let p = QuasiPolynomial::mono(y.clone());
        for j in 0..=r {
            let full = t_op(j, &ctx, &p).expect("orbit preserved");
            let single = t_collapsed(j, &ctx, &p).expect("orbit preserved");
            if full != single {
                report
                    .failures
                    .push(format!("collapse mismatch for T_{} at {:?}", j, y));
            }
        }
    }
    report
}

/// The cyclic-vector identity: the ordered product of T's over a reduced
/// word of any finite Weyl element w sends the basepoint monomial to
/// kappa_w times the monomial at w(c). Runs over all of W_0 on the orbit
/// of a random point and on the integer orbit.
pub fn check_cyclic(params: &ParamSpec, rng: &mut impl Rng) -> CheckReport {
    let mut report = CheckReport::new("cyclic-vector");
    let r = params.rank;
    let zero = vec![Rat::from_integer(BigInt::from(0)); r];
    let random = random_point(rng, r);
    for base in [&zero[..], &random[..]] {
        let ctx = random_context_at(rng, params, base);
        let c = ctx.orbit.basepoint.clone();
        for w in SignedPermutation::all(r) {
            report.trials += 1;
            let g = AffineWeylElement::from_finite(w.clone());
            let word = reduced_word(&g);
            let image = apply_word(&ctx, &word, &QuasiPolynomial::mono(c.clone()))
                .expect("orbit preserved");
            let expected = QuasiPolynomial::mono_scaled(g.act_on_point(&c), kappa_scalar(&ctx, &w));
            if image != expected {
                report
                    .failures
                    .push(format!("cyclic identity fails at w = {:?}", w));
            }
        }
    }
    report
}

/// Runs the whole suite with one base seed, deriving an independent
/// deterministic stream per check.
pub fn run_all(params: &ParamSpec, seed: u64, trials: usize) -> Vec<CheckReport> {
    let stream = |idx: u64| ChaCha8Rng::seed_from_u64(seed.wrapping_add(idx));
    vec![
        check_hecke(params, &mut stream(1), trials),
        check_braid_finite(params, &mut stream(2), trials),
        check_braid_affine(params, &mut stream(3), trials),
        check_y_commute(params, &mut stream(4), trials.min(20)),
        check_y_leading(params, &mut stream(5), trials.min(20)),
        check_poly_reduction(params, &mut stream(6), trials),
        check_collapse(params, &mut stream(7), trials),
        check_cyclic(params, &mut stream(8)),
    ]
}
