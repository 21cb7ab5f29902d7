//! Seeded generators for property tests and fuzzing: polynomials, rank-one
//! factorizations, reduced factorizations and tables.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::{Field, Monomial, Polynomial, Scalar};
use crate::mf::{BettiTable, MatrixFactorization};
use crate::orlov::{CohomologyTable, HypersurfaceContext};

/// Small scalar: numerators in `[-5, 5]`, denominators in `[1, 4]`.
pub fn scalar<R: Rng + ?Sized>(rng: &mut R, field: Field) -> Scalar {
    let mut q = || BigRational::new(BigInt::from(rng.gen_range(-5..=5)), BigInt::from(rng.gen_range(1..=4)));
    match field {
        Field::Rational => Scalar::Rational(q()),
        Field::GaussianRational => Scalar::Gaussian { re: q(), im: q() },
        Field::Prime(p) => field.from_int(rng.gen_range(0..p) as i64),
    }
}

pub fn nonzero_scalar<R: Rng + ?Sized>(rng: &mut R, field: Field) -> Scalar {
    loop {
        let c = scalar(rng, field);
        if !c.is_zero() {
            return c;
        }
    }
}

/// Exponent vector of total degree `degree` supported on `vars`.
fn monomial<R: Rng + ?Sized>(rng: &mut R, nvars: usize, vars: &[usize], degree: u32) -> Monomial {
    let mut exps = vec![0u32; nvars];
    for _ in 0..degree {
        exps[*vars.choose(rng).expect("at least one variable")] += 1;
    }
    Monomial::from_exponents(exps)
}

/// Random polynomial with up to `max_terms` terms of mixed degree at most
/// `max_degree`.
pub fn polynomial<R: Rng + ?Sized>(
    rng: &mut R,
    field: Field,
    nvars: usize,
    max_degree: u32,
    max_terms: usize,
) -> Polynomial {
    let vars: Vec<usize> = (0..nvars).collect();
    let terms = (0..rng.gen_range(0..=max_terms))
        .map(|_| {
            let deg = rng.gen_range(0..=max_degree);
            let m = if nvars == 0 { Monomial::one(0) } else { monomial(rng, nvars, &vars, deg) };
            (m, scalar(rng, field))
        })
        .collect();
    Polynomial::from_terms(field, nvars, terms)
}

/// Nonzero homogeneous polynomial of degree `degree` in the variables `vars`.
pub fn homogeneous<R: Rng + ?Sized>(
    rng: &mut R,
    field: Field,
    nvars: usize,
    vars: &[usize],
    degree: u32,
    max_terms: usize,
) -> Polynomial {
    loop {
        let terms = (0..rng.gen_range(1..=max_terms.max(1)))
            .map(|_| (monomial(rng, nvars, vars, degree), nonzero_scalar(rng, field)))
            .collect();
        let p = Polynomial::from_terms(field, nvars, terms);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Reduced rank-one factorization `(g, h)` of `f = g·h`, where `g` and `h`
/// are nonconstant, homogeneous and use disjoint subsets of `vars`.
/// Needs `degree ≥ 2` and at least two variables.
pub fn rank_one<R: Rng + ?Sized>(
    rng: &mut R,
    field: Field,
    nvars: usize,
    vars: &[usize],
    degree: u32,
) -> MatrixFactorization {
    assert!(degree >= 2 && vars.len() >= 2);
    let mut vars = vars.to_vec();
    vars.shuffle(rng);
    let cut = rng.gen_range(1..vars.len());
    let k = rng.gen_range(1..degree);
    let g = homogeneous(rng, field, nvars, &vars[..cut], k, 3);
    let h = homogeneous(rng, field, nvars, &vars[cut..], degree - k, 3);
    let f = &g * &h;
    MatrixFactorization::rank_one_from(f, g, h).expect("g*h factors f")
}

/// Elementary change of basis on `F⁰` or `F¹` with a random homogeneous
/// coefficient, or a rescaling of one generator. The result presents an
/// isomorphic factorization and stays reduced when the input is.
pub fn base_change<R: Rng + ?Sized>(rng: &mut R, mf: &MatrixFactorization) -> MatrixFactorization {
    let n = mf.rank();
    if n == 0 {
        return mf.clone();
    }
    let (field, nvars) = (mf.field(), mf.nvars());
    let vars: Vec<usize> = (0..nvars).collect();
    let (mut s0, mut s1) = (mf.s0().clone(), mf.s1().clone());
    let on_f0 = rng.gen_bool(0.5);
    let degs = if on_f0 { mf.f0_degrees() } else { mf.f1_degrees() };
    let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));

    if i == j || degs.as_slice()[j] < degs.as_slice()[i] {
        // Rescale generator i by a unit c: one map gets c, the other 1/c.
        let c = nonzero_scalar(rng, field);
        let c_inv = c.inverse().expect("nonzero");
        let (a, b) = if on_f0 { (&mut s0, &mut s1) } else { (&mut s1, &mut s0) };
        // a has generator i as a column, b as a row.
        for r in 0..a.rows() {
            let e = a.get_mut(r, i);
            *e = e.scale(&c);
        }
        for k in 0..b.cols() {
            let e = b.get_mut(i, k);
            *e = e.scale(&c_inv);
        }
    } else {
        let deg = (degs.as_slice()[j] - degs.as_slice()[i]) as u32;
        let h = if nvars == 0 || deg == 0 {
            Polynomial::constant(field, nvars, nonzero_scalar(rng, field))
        } else {
            homogeneous(rng, field, nvars, &vars, deg, 2)
        };
        if on_f0 {
            // s0 ← s0·(1 + h E_ij): col j += h col i.  s1 ← (1 − h E_ij)·s1: row i −= h row j.
            for r in 0..s0.rows() {
                let delta = s0.get(r, i) * &h;
                let e = s0.get_mut(r, j);
                *e = &*e + &delta;
            }
            for c in 0..s1.cols() {
                let delta = &h * s1.get(j, c);
                let e = s1.get_mut(i, c);
                *e = &*e - &delta;
            }
        } else {
            // s0 ← (1 + h E_ij)·s0: row i += h row j.  s1 ← s1·(1 − h E_ij): col j −= h col i.
            for c in 0..s0.cols() {
                let delta = &h * s0.get(j, c);
                let e = s0.get_mut(i, c);
                *e = &*e + &delta;
            }
            for r in 0..s1.rows() {
                let delta = s1.get(r, i) * &h;
                let e = s1.get_mut(r, j);
                *e = &*e - &delta;
            }
        }
    }
    MatrixFactorization::from_parts(mf.f().clone(), s0, s1).expect("base change preserves validity")
}

/// Reduced factorization of a random `f = g·h`: a direct sum of one to
/// `max_summands` twisted copies of `(g, h)` and its shift, followed by a
/// few random base changes.
pub fn reduced_mf<R: Rng + ?Sized>(
    rng: &mut R,
    field: Field,
    nvars: usize,
    degree: u32,
    max_summands: usize,
) -> MatrixFactorization {
    let vars: Vec<usize> = (0..nvars).collect();
    let base = rank_one(rng, field, nvars, &vars, degree);
    let mut acc: Option<MatrixFactorization> = None;
    for _ in 0..rng.gen_range(1..=max_summands.max(1)) {
        let piece = if rng.gen_bool(0.5) { base.clone() } else { base.shift() };
        let piece = piece.twist(rng.gen_range(-3..=3));
        acc = Some(match acc {
            None => piece,
            Some(a) => a.direct_sum(&piece).expect("same f"),
        });
    }
    let mut mf = acc.expect("at least one summand");
    for _ in 0..rng.gen_range(0..=3) {
        mf = base_change(rng, &mf);
    }
    mf
}

/// Betti table with up to `max_entries` entries, `j ∈ [-j_span, j_span]`.
pub fn betti_table<R: Rng + ?Sized>(rng: &mut R, max_entries: usize, j_span: i64) -> BettiTable {
    let mut t = BettiTable::new();
    for _ in 0..rng.gen_range(0..=max_entries) {
        t.add(rng.gen_range(0..=1), rng.gen_range(-j_span..=j_span), rng.gen_range(1..=9));
    }
    t
}

/// Cohomology table in the image of the Betti translation for `ctx`:
/// `p ∈ [a, a + d − 1]`, `h ∈ [-h_span, h_span]`.
pub fn cohomology_table<R: Rng + ?Sized>(
    rng: &mut R,
    ctx: &HypersurfaceContext,
    max_entries: usize,
    h_span: i64,
) -> CohomologyTable {
    let mut t = CohomologyTable::new(ctx.n());
    for _ in 0..rng.gen_range(0..=max_entries) {
        let p = ctx.a() + rng.gen_range(0..ctx.d());
        t.add(p, rng.gen_range(-h_span..=h_span), rng.gen_range(1..=9));
    }
    t
}
