//! Numerical side of the correspondence between graded matrix factorizations
//! of `f` and complexes on the hypersurface `X = V(f) ⊂ ℙⁿ`: Betti tables
//! versus Beilinson cohomology tables, the `ρ` invariant, the image of the
//! residue field, Shamash resolution degrees and the rank-bound checks.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::bott::{binom, rho_structure_sheaf, Count};
use crate::mf::{BettiTable, MatrixFactorization};
use crate::par::Execution;

/// Hypotheses on `f` and `X` that no check here verifies.
pub const UNCHECKED_HYPOTHESES: [&str; 2] = ["f is irreducible", "X = V(f) is smooth"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrlovError {
    #[error("invalid context: {0}")]
    Context(String),
    #[error("needs a = n + 1 - d <= 0, got a = {a} (n = {n}, d = {d})")]
    Fano { n: i64, d: i64, a: i64 },
    #[error(
        "rho bound rejected for a = {a} > 0: the bound is only expected for a <= 0; on Fano \
         hypersurfaces it fails (a plane conic has rho(O_X) = 2 < 4)"
    )]
    FanoExclusion { a: i64 },
    #[error("table entry (p = {p}, h = {h}) lies outside the support p in [0, {n}], h in [0, {top}]", top = n - 1)]
    OutOfSupport { n: i64, p: i64, h: i64 },
    #[error("table entry (p = {p}, h = {h}) has r = p - a = {r}, outside [0, d) for d = {d}")]
    NotInImage { p: i64, h: i64, r: i64, d: i64 },
    #[error("rho of a matrix factorization needs a reduced input")]
    NotReduced,
    #[error("Shamash index must be <= 0, got {0}")]
    ShamashIndex(i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HypersurfaceContext {
    n: i64,
    d: i64,
}

impl HypersurfaceContext {
    pub fn new(n: i64, d: i64) -> Result<Self, OrlovError> {
        if n < 1 {
            return Err(OrlovError::Context(format!("n must be >= 1, got {n}")));
        }
        if d < 1 {
            return Err(OrlovError::Context(format!("d must be >= 1, got {d}")));
        }
        Ok(HypersurfaceContext { n, d })
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn a(&self) -> i64 {
        self.n + 1 - self.d
    }

    pub fn e(&self) -> i64 {
        self.n / 2
    }

    fn require_non_fano(&self) -> Result<(), OrlovError> {
        if self.a() > 0 {
            return Err(OrlovError::Fano { n: self.n, d: self.d, a: self.a() });
        }
        Ok(())
    }

    fn in_support(&self, p: i64, h: i64) -> bool {
        (0..=self.n).contains(&p) && (0..self.n).contains(&h)
    }
}

impl fmt::Display for HypersurfaceContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n = {}, d = {}, a = {}, e = {}", self.n, self.d, self.a(), self.e())
    }
}

/// `(q, r)` with `a − j = q·d − r` and `0 ≤ r < d`.
pub fn euclid_split(ctx: &HypersurfaceContext, j: i64) -> (i64, i64) {
    let x = ctx.a() - j;
    let q = x.div_euclid(ctx.d) + i64::from(x.rem_euclid(ctx.d) != 0);
    (q, q * ctx.d - x)
}

/// Counts at `(p, h)`: `h^h(ℙⁿ, i_*C ⊗ Ω^p(p))`.
///
/// Entries outside `p ∈ [0, n]`, `h ∈ [0, n − 1]` are kept and reported by
/// [`CohomologyTable::diagnostics`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyTable {
    n: i64,
    entries: BTreeMap<(i64, i64), u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SupportDiagnostic {
    pub p: i64,
    pub h: i64,
    pub count: u64,
}

impl fmt::Display for SupportDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "entry (p = {}, h = {}) = {} is out of support", self.p, self.h, self.count)
    }
}

impl CohomologyTable {
    pub fn new(n: i64) -> Self {
        CohomologyTable { n, entries: BTreeMap::new() }
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn add(&mut self, p: i64, h: i64, count: u64) {
        if count > 0 {
            *self.entries.entry((p, h)).or_insert(0) += count;
        }
    }

    pub fn get(&self, p: i64, h: i64) -> u64 {
        self.entries.get(&(p, h)).copied().unwrap_or(0)
    }

    /// Nonzero entries as `((p, h), count)`, ordered by `(p, h)`.
    pub fn iter(&self) -> impl Iterator<Item = ((i64, i64), u64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn diagnostics(&self) -> Vec<SupportDiagnostic> {
        self.iter()
            .filter(|&((p, h), _)| !((0..=self.n).contains(&p) && (0..self.n).contains(&h)))
            .map(|((p, h), count)| SupportDiagnostic { p, h, count })
            .collect()
    }
}

impl fmt::Display for CohomologyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("(empty)");
        }
        let parts: Vec<String> = self.iter().map(|((p, h), v)| format!("T[{p},{h}] = {v}")).collect();
        f.write_str(&parts.join(", "))
    }
}

/// `b^i_j ↦ (p, h) = (r + a, r + a − 2q − i + 1)` where `a − j = qd − r`.
pub fn betti_to_table(ctx: &HypersurfaceContext, betti: &BettiTable) -> Result<CohomologyTable, OrlovError> {
    ctx.require_non_fano()?;
    let a = ctx.a();
    let mut table = CohomologyTable::new(ctx.n);
    for ((i, j), count) in betti.iter() {
        let (q, r) = euclid_split(ctx, j);
        table.add(r + a, r + a - 2 * q - i64::from(i) + 1, count);
    }
    Ok(table)
}

/// Inverse index map: `r = p − a`, `i ≡ p + 1 − h (mod 2)`,
/// `q = (p + 1 − h − i)/2`, `j = a − qd + r`.
pub fn table_to_betti(ctx: &HypersurfaceContext, table: &CohomologyTable) -> Result<BettiTable, OrlovError> {
    ctx.require_non_fano()?;
    let a = ctx.a();
    let mut betti = BettiTable::new();
    for ((p, h), count) in table.iter() {
        let r = p - a;
        if !(0..ctx.d).contains(&r) {
            return Err(OrlovError::NotInImage { p, h, r, d: ctx.d });
        }
        let i = (p + 1 - h).rem_euclid(2);
        let q = (p + 1 - h - i) / 2;
        betti.add(i as u8, a - q * ctx.d + r, count);
    }
    Ok(betti)
}

pub fn rho_of_table(table: &CohomologyTable) -> u64 {
    table.total()
}

/// `rank F⁰ + rank F¹` of a reduced factorization.
pub fn rho_of_mf(mf: &MatrixFactorization) -> Result<u64, OrlovError> {
    if !mf.is_reduced() {
        return Err(OrlovError::NotReduced);
    }
    Ok(mf.total_rank() as u64)
}

/// `(p, h) ↦ (n − p, n − 1 − h)`.
pub fn dual_table(ctx: &HypersurfaceContext, table: &CohomologyTable) -> Result<CohomologyTable, OrlovError> {
    ctx.require_non_fano()?;
    let n = ctx.n;
    let mut out = CohomologyTable::new(n);
    for ((p, h), count) in table.iter() {
        if !ctx.in_support(p, h) {
            return Err(OrlovError::OutOfSupport { n, p, h });
        }
        out.add(n - p, n - 1 - h, count);
    }
    Ok(out)
}

/// Image of the residue field `k(ℓ)` on `X`:
/// `i^*(⋀^p T_{ℙⁿ})(t)[s]`, or zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phi0Descriptor {
    Zero,
    Bundle { exterior_power: i64, twist: i64, shift: i64 },
}

impl fmt::Display for Phi0Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Phi0Descriptor::Zero => f.write_str("0"),
            Phi0Descriptor::Bundle { exterior_power, twist, shift } => {
                write!(f, "i^*(wedge^{exterior_power} T)({twist})[{shift}]")
            }
        }
    }
}

pub fn phi0_residue(ctx: &HypersurfaceContext, l: i64) -> Result<Phi0Descriptor, OrlovError> {
    ctx.require_non_fano()?;
    let (d, n, a) = (ctx.d, ctx.n, ctx.a());
    let q = l.div_euclid(d) + i64::from(l.rem_euclid(d) != 0);
    let r = q * d - l;
    if -r > a {
        return Ok(Phi0Descriptor::Zero);
    }
    Ok(Phi0Descriptor::Bundle { exterior_power: r + a, twist: -r - a, shift: 2 * q + n - r - a - 1 })
}

/// Degrees of the free module in cohomological index `m` of the Shamash
/// resolution of `k` over `S/(f)`, with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShamashDegrees(BTreeMap<i64, Count>);

impl ShamashDegrees {
    pub fn multiplicity(&self, degree: i64) -> Count {
        self.0.get(&degree).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, Count)> + '_ {
        self.0.iter().map(|(&k, &v)| (k, v))
    }

    pub fn total_rank(&self) -> Count {
        self.0.values().sum()
    }
}

impl fmt::Display for ShamashDegrees {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(deg, mult)| format!("{deg} x {mult}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// `{s + jd with multiplicity binom(n+1, s) : s + 2j = −m, j ≥ 0, 0 ≤ s ≤ n+1}`.
pub fn shamash_degrees(n: i64, d: i64, m: i64) -> Result<ShamashDegrees, OrlovError> {
    if m > 0 {
        return Err(OrlovError::ShamashIndex(m));
    }
    let mut out = BTreeMap::new();
    for j in 0..=(-m / 2) {
        let s = -m - 2 * j;
        let mult = binom(n + 1, s);
        if mult > 0 {
            *out.entry(s + j * d).or_insert(0) += mult;
        }
    }
    Ok(ShamashDegrees(out))
}

/// Instance-level check of `rank F⁰ ≥ 2^e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BgsVerdict {
    pub rank: u64,
    pub reduced_rank: u64,
    pub bound: Count,
    /// `F` reduces to rank 0; the bound does not apply.
    pub trivial: bool,
    /// `None` when trivial.
    pub pass: Option<bool>,
    pub notes: Vec<String>,
}

pub fn check_bgs(ctx: &HypersurfaceContext, mf: &MatrixFactorization) -> BgsVerdict {
    let mut notes = Vec::new();
    if mf.nvars() as i64 != ctx.n + 1 {
        notes.push(format!("f has {} variables but n + 1 = {}", mf.nvars(), ctx.n + 1));
    }
    if mf.degree() as i64 != ctx.d {
        notes.push(format!("f has degree {} but d = {}", mf.degree(), ctx.d));
    }
    let reduced_rank = mf.reduce().rank() as u64;
    let rank = mf.rank() as u64;
    let bound: Count = 1 << ctx.e();
    let trivial = reduced_rank == 0;
    if !trivial && reduced_rank != rank {
        notes.push(format!("input is not reduced; the reduced rank is {reduced_rank}"));
    }
    let pass = (!trivial).then(|| Count::from(rank) >= bound);
    if pass == Some(false) {
        notes.push(format!("rank {rank} < 2^e = {bound}: would-be counterexample"));
    }
    BgsVerdict { rank, reduced_rank, bound, trivial, pass, notes }
}

/// Instance-level check of `ρ ≥ 2^{e+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RhoVerdict {
    pub value: Count,
    pub bound: Count,
    pub pass: bool,
}

pub fn check_rho(ctx: &HypersurfaceContext, value: Count) -> Result<RhoVerdict, OrlovError> {
    if ctx.a() > 0 {
        return Err(OrlovError::FanoExclusion { a: ctx.a() });
    }
    let bound: Count = 1 << (ctx.e() + 1);
    Ok(RhoVerdict { value, bound, pass: value >= bound })
}

/// One cell of a `ρ(O_X)` sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepRow {
    pub ctx: HypersurfaceContext,
    pub rho: Count,
    pub verdict: RhoVerdict,
}

/// `ρ(O_X)` and its bound check over `1 ≤ n ≤ n_max`, `n + 1 ≤ d ≤ d_max`
/// (cells with `a > 0` are skipped), ordered by `(n, d)`.
pub fn sweep_rho_structure_sheaf(n_max: i64, d_max: i64, exec: Execution) -> Vec<SweepRow> {
    let cells: Vec<HypersurfaceContext> =
        (1..=n_max).flat_map(|n| (n + 1..=d_max).map(move |d| HypersurfaceContext { n, d })).collect();
    exec.map_slice(&cells, |ctx| {
        let rho = rho_structure_sheaf(ctx.n, ctx.d).expect("a <= 0 in every sweep cell");
        let verdict = check_rho(ctx, rho).expect("a <= 0 in every sweep cell");
        SweepRow { ctx: *ctx, rho, verdict }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, Field};
    use crate::mf::fermat;

    fn ctx(n: i64, d: i64) -> HypersurfaceContext {
        HypersurfaceContext::new(n, d).unwrap()
    }

    #[test]
    fn context_values() {
        let c = ctx(3, 4);
        assert_eq!((c.a(), c.e()), (0, 1));
        assert!(HypersurfaceContext::new(0, 2).is_err());
        assert!(HypersurfaceContext::new(2, 0).is_err());
    }

    #[test]
    fn splits() {
        let c = ctx(3, 4);
        assert_eq!(euclid_split(&c, 0), (0, 0));
        assert_eq!(euclid_split(&c, 2), (0, 2));
        assert_eq!(euclid_split(&c, 6), (-1, 2));
        assert_eq!(euclid_split(&c, -4), (1, 0));
    }

    #[test]
    fn fermat_table() {
        let c = ctx(3, 4);
        let mut b = BettiTable::new();
        b.add(1, 0, 2);
        let t = betti_to_table(&c, &b).unwrap();
        assert_eq!(t.get(0, 0), 2);
        assert!(t.diagnostics().is_empty());
        assert_eq!(table_to_betti(&c, &t).unwrap(), b);

        let mut b = BettiTable::new();
        b.add(0, 2, 2);
        let t = betti_to_table(&c, &b).unwrap();
        assert_eq!(t.get(2, 3), 2);
        assert_eq!(t.diagnostics(), vec![SupportDiagnostic { p: 2, h: 3, count: 2 }]);
        assert_eq!(table_to_betti(&c, &t).unwrap(), b);
        assert!(betti_to_table(&ctx(2, 2), &b).is_err());
        assert!(betti_to_table(&c, &BettiTable::new()).unwrap().is_empty());
    }

    #[test]
    fn rho_of_fermat() {
        let g = fermat(Field::GaussianRational, 2, 2, false).unwrap();
        assert_eq!(rho_of_mf(&g), Ok(4));
        let t = MatrixFactorization::trivial_unit_first(g.f().clone()).unwrap();
        let sum = g.direct_sum(&t).unwrap();
        assert_eq!(rho_of_mf(&sum), Err(OrlovError::NotReduced));
        assert_eq!(rho_of_mf(&sum.reduce()), Ok(4));
        let table = betti_to_table(&ctx(3, 4), &g.betti().unwrap()).unwrap();
        assert_eq!(rho_of_table(&table), 4);
    }

    #[test]
    fn duality() {
        let c = ctx(3, 4);
        let mut t = CohomologyTable::new(3);
        t.add(0, 0, 2);
        let dual = dual_table(&c, &t).unwrap();
        assert_eq!(dual.get(3, 2), 2);
        assert_eq!(dual_table(&c, &dual).unwrap(), t);
        t.add(2, 3, 1);
        assert_eq!(dual_table(&c, &t), Err(OrlovError::OutOfSupport { n: 3, p: 2, h: 3 }));
    }

    #[test]
    fn residue_field_images() {
        let c = ctx(3, 4);
        let bundle = |p, t, s| Phi0Descriptor::Bundle { exterior_power: p, twist: t, shift: s };
        assert_eq!(phi0_residue(&c, 0), Ok(bundle(0, 0, 2)));
        assert_eq!(phi0_residue(&c, -2), Ok(bundle(2, -2, 0)));
        assert_eq!(phi0_residue(&c, 4), Ok(bundle(0, 0, 4)));
        assert_eq!(phi0_residue(&ctx(3, 5), 0), Ok(Phi0Descriptor::Zero));
        assert!(phi0_residue(&ctx(2, 2), 0).is_err());
    }

    #[test]
    fn shamash_terms() {
        let s = shamash_degrees(3, 4, 0).unwrap();
        assert_eq!(s.to_string(), "{0 x 1}");
        let s = shamash_degrees(3, 4, -2).unwrap();
        assert_eq!(s.multiplicity(2), 6);
        assert_eq!(s.multiplicity(4), 1);
        let s = shamash_degrees(3, 4, -3).unwrap();
        assert_eq!(s.multiplicity(3), 4);
        assert_eq!(s.multiplicity(5), 4);
        assert_eq!(shamash_degrees(3, 4, 1), Err(OrlovError::ShamashIndex(1)));
    }

    #[test]
    fn bgs_checks() {
        let g = fermat(Field::GaussianRational, 2, 2, false).unwrap();
        let v = check_bgs(&ctx(3, 4), &g);
        assert_eq!((v.rank, v.bound, v.trivial, v.pass), (2, 2, false, Some(true)));
        assert!(v.notes.is_empty());

        let t = MatrixFactorization::trivial_unit_first(g.f().clone()).unwrap();
        let v = check_bgs(&ctx(3, 4), &t);
        assert!(v.trivial);
        assert_eq!(v.pass, None);

        let p = |s: &str| parse_poly(s, Field::Rational, 5).unwrap();
        let small = MatrixFactorization::rank_one_from(p("x0^2*x1^3"), p("x0^2"), p("x1^3")).unwrap();
        let v = check_bgs(&ctx(4, 5), &small);
        assert_eq!((v.rank, v.bound, v.pass), (1, 4, Some(false)));
    }

    #[test]
    fn rho_checks() {
        assert!(check_rho(&ctx(3, 4), 4).unwrap().pass);
        assert!(check_rho(&ctx(2, 3), 4).unwrap().pass);
        assert_eq!(check_rho(&ctx(2, 2), 2), Err(OrlovError::FanoExclusion { a: 1 }));
    }

    #[test]
    fn sweep_order_and_modes_agree() {
        let seq = sweep_rho_structure_sheaf(4, 7, Execution::Sequential);
        let par = sweep_rho_structure_sheaf(4, 7, Execution::Parallel);
        assert_eq!(seq, par);
        let keys: Vec<(i64, i64)> = seq.iter().map(|r| (r.ctx.n(), r.ctx.d())).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(seq[0].rho, 4);
        assert!(seq.iter().all(|r| r.verdict.pass));
    }
}
