//! Cohomology of twisted differentials `Ω^p(ℓ)` on `ℙⁿ` (Bott's formula) and
//! of their restrictions to a degree-`d` hypersurface `X`.
//!
//! Counts are `u128`; inputs whose binomials exceed that range panic.

use std::fmt;

use thiserror::Error;

pub type Count = u128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BottError {
    #[error("closed form needs a = n + 1 - d <= 0, got a = {a}")]
    Fano { a: i64 },
}

/// Binomial coefficient extended by zero: `binom(x, k) = 0` when `k < 0` or
/// `x < k`.
pub fn binom(x: i64, k: i64) -> Count {
    if k < 0 || x < k {
        return 0;
    }
    let k = k.min(x - k);
    let mut acc: Count = 1;
    for i in 0..k {
        // acc * (x - i) / (i + 1) stays integral at every step.
        acc = acc.checked_mul((x - i) as Count).expect("binomial coefficient exceeds u128") / (i + 1) as Count;
    }
    acc
}

/// `h^q(ℙⁿ, Ω^p(ℓ))`.
pub fn bott(n: i64, p: i64, q: i64, l: i64) -> Count {
    if !(0..=n).contains(&p) || !(0..=n).contains(&q) {
        return 0;
    }
    if q == 0 && l > p {
        binom(l + n - p, l) * binom(l - 1, p)
    } else if l == 0 && q == p {
        1
    } else if q == n && l < p - n {
        binom(p - l, -l) * binom(-l - 1, n - p)
    } else {
        0
    }
}

/// Cohomology dimensions `q ↦ h^q`, indexed over `[0, n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyVector {
    n: i64,
    entries: Vec<Count>,
}

impl CohomologyVector {
    pub fn zero(n: i64) -> Self {
        CohomologyVector { n, entries: vec![0; (n + 1).max(0) as usize] }
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn get(&self, q: i64) -> Count {
        usize::try_from(q).ok().and_then(|q| self.entries.get(q)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &[Count] {
        &self.entries
    }

    pub fn total(&self) -> Count {
        self.entries.iter().sum()
    }

    /// `Σ (−1)^q h^q`.
    pub fn euler_characteristic(&self) -> i128 {
        self.entries.iter().enumerate().map(|(q, &h)| if q % 2 == 0 { h as i128 } else { -(h as i128) }).sum()
    }

    pub fn nonzero_degrees(&self) -> Vec<i64> {
        (0..=self.n).filter(|&q| self.get(q) != 0).collect()
    }
}

impl fmt::Display for CohomologyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", cells.join(", "))
    }
}

/// The vector `q ↦ h^q(ℙⁿ, Ω^p(ℓ))`; at most one entry is nonzero.
pub fn bott_vector(n: i64, p: i64, l: i64) -> CohomologyVector {
    CohomologyVector { n, entries: (0..=n).map(|q| bott(n, p, q, l)).collect() }
}

/// `q ↦ h^q(ℙⁿ, O_X ⊗ Ω^r(r + t))` for a hypersurface `X` of degree `d`,
/// read off the long exact sequence of
/// `0 → Ω^r(r+t−d) → Ω^r(r+t) → O_X ⊗ Ω^r(r+t) → 0`.
///
/// Both ambient vectors are concentrated in one degree each. Where they
/// overlap, multiplication by `f` is injective on `H⁰` and surjective on
/// `Hⁿ`; an overlap strictly between would need `ℓ = 0` for two different
/// twists.
pub fn restricted_bott(n: i64, d: i64, r: i64, t: i64) -> CohomologyVector {
    assert!(d >= 1, "hypersurface degree must be positive");
    let sub = bott_vector(n, r, r + t - d);
    let mid = bott_vector(n, r, r + t);

    // Rank of multiplication by f: H^q(sub) → H^q(mid).
    let rank = |q: i64| -> Count {
        let (a, b) = (sub.get(q), mid.get(q));
        if a == 0 || b == 0 {
            0
        } else if q == 0 {
            assert!(a <= b, "multiplication by f must be injective on H^0");
            a
        } else if q == n {
            assert!(b <= a, "multiplication by f must be surjective on H^n");
            b
        } else {
            panic!("ambient cohomology overlaps in middle degree {q}");
        }
    };

    let mut out = CohomologyVector::zero(n);
    for q in 0..=n {
        // coker(H^q(sub) → H^q(mid)) ⊕ ker(H^{q+1}(sub) → H^{q+1}(mid))
        let coker = mid.get(q) - rank(q);
        let ker = if q < n { sub.get(q + 1) - rank(q + 1) } else { 0 };
        out.entries[q as usize] = coker + ker;
    }
    assert_eq!(out.get(n), 0, "restriction to X has no top-degree cohomology");
    debug_assert_eq!(out.euler_characteristic(), mid.euler_characteristic() - sub.euler_characteristic());
    out
}

/// `ρ(O_X) = 1 + Σ_r binom(d, d−r)·binom(d−r−1, n−r)` for `a ≤ 0`.
pub fn rho_structure_sheaf(n: i64, d: i64) -> Result<Count, BottError> {
    let a = n + 1 - d;
    if a > 0 {
        return Err(BottError::Fano { a });
    }
    Ok(1 + (0..=n).map(|r| binom(d, d - r) * binom(d - r - 1, n - r)).sum::<Count>())
}

/// `ρ` of a point: `Σ_r rank Ω^r = Σ_r binom(n, r) = 2ⁿ`.
pub fn rho_point(n: i64) -> Count {
    (0..=n).map(|r| binom(n, r)).sum()
}

/// `ρ(O_X(j)) = Σ_r Σ_q h^q(O_X ⊗ Ω^r(r + j))`.
pub fn rho_line_bundle(n: i64, d: i64, j: i64) -> Count {
    (0..=n).map(|r| restricted_bott(n, d, r, j).total()).sum()
}
