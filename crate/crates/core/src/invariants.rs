//! Closed-form numeric layer: Betti numbers, the Golod bound, the defect
//! sequence `𝒫`, deviations and the Poincaré denominator through `t⁵`.
//!
//! Series are integer polynomials truncated after `t⁵`.

use crate::error::{Error, Result};

/// Number of coefficients kept (`t⁰..t⁵`).
pub const SERIES_LEN: usize = 6;

pub type Series = [i64; SERIES_LEN];

/// Largest `i` whose rank `a_i` enters the series through `t⁵`.
pub const MAX_RANKS: i64 = 4;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InvariantInput {
    pub n: i64,
    pub c: i64,
    /// `a_1..a_m` with `m = min(c, 4)`; higher ranks do not reach `t⁵`.
    pub ranks: Vec<i64>,
    pub q11: i64,
    pub q12: i64,
    pub q13: i64,
    pub q22: i64,
    pub a: i64,
    pub b: i64,
}

impl InvariantInput {
    /// `a_i`, zero outside `1..=c`.
    pub fn a_i(&self, i: usize) -> i64 {
        if i == 0 {
            return 0;
        }
        self.ranks.get(i - 1).copied().unwrap_or(0)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Input(m.to_string()));
        let nonneg = [
            self.n, self.c, self.q11, self.q12, self.q13, self.q22, self.a, self.b,
        ];
        if nonneg.iter().chain(&self.ranks).any(|&x| x < 0) {
            return bad("invariants must be non-negative");
        }
        if self.c > self.n {
            return bad("c exceeds n");
        }
        if self.ranks.len() as i64 != self.c.min(MAX_RANKS) {
            return bad("expected min(c, 4) homology ranks");
        }
        if self.q11 > self.a_i(2) {
            return bad("q11 exceeds a2");
        }
        if self.q12 > self.a_i(3) {
            return bad("q12 exceeds a3");
        }
        if self.a > self.a_i(4) {
            return bad("a exceeds a4");
        }
        Ok(())
    }
}

pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1, |acc, t| acc * (n - t) / (t + 1))
}

/// `b_0..b_len-1` with `b_0 = 1`, `b_1 = n`,
/// `b_i = Σ_{j=1}^{i-1} a_j b_{i-j-1} + C(n, i)`.
pub fn golod_bound(n: i64, ranks: &[i64], len: usize) -> Vec<i64> {
    let a = |j: usize| ranks.get(j - 1).copied().unwrap_or(0);
    let mut b: Vec<i64> = Vec::with_capacity(len);
    for i in 0..len {
        let tail: i64 = (1..i).map(|j| a(j) * b[i - j - 1]).sum();
        b.push(tail + binomial(n, i as i64));
    }
    b
}

pub fn betti_formula(inp: &InvariantInput) -> Series {
    let n = inp.n;
    let a = |i| inp.a_i(i);
    let (q11, q12) = (inp.q11, inp.q12);
    let c = |k| binomial(n, k);
    [
        1,
        n,
        c(2) + a(1),
        c(3) + n * a(1) + a(2) - q11,
        c(4) + c(2) * a(1) + n * a(2) + a(3) + a(1) * a(1) - (n + 1) * q11 - q12,
        c(5) + c(3) * a(1) + c(2) * a(2) + n * a(3) + a(4) + n * a(1) * a(1) + 2 * a(1) * a(2)
            - (binomial(n + 1, 2) + 2 * a(1)) * q11
            - (n + 1) * q12
            + inp.b
            - inp.a,
    ]
}

pub fn golod_defect(inp: &InvariantInput) -> Series {
    let n = inp.n;
    let (q11, q12) = (inp.q11, inp.q12);
    [
        0,
        0,
        0,
        q11,
        (n + 1) * q11 + q12,
        (binomial(n + 1, 2) + 2 * inp.a_i(1)) * q11 + (n + 1) * q12 + inp.a - inp.b,
    ]
}

/// `ε_1..ε_5`.
pub fn deviations_formula(inp: &InvariantInput) -> [i64; 5] {
    let a = |i| inp.a_i(i);
    let (q11, q12) = (inp.q11, inp.q12);
    [
        inp.n,
        a(1),
        a(2) - q11,
        a(3) - q12 + binomial(a(1), 2) - q11,
        a(4) + a(1) * a(2) - a(1) * q11 - q12 + inp.b - inp.a,
    ]
}

/// Inverts the relations expressing `β_1..β_5` through `ε_1..ε_5`.
pub fn deviations_from_betti(beta: &Series) -> Result<[i64; 5]> {
    if beta[0] != 1 {
        return Err(Error::Inconsistent(format!(
            "β0 = {} instead of 1",
            beta[0]
        )));
    }
    let c = binomial;
    let e1 = beta[1];
    let e2 = beta[2] - c(e1, 2);
    let e3 = beta[3] - e2 * e1 - c(e1, 3);
    let e4 = beta[4] - e3 * e1 - c(1 + e2, 2) - e2 * c(e1, 2) - c(e1, 4);
    let e5 = beta[5] - e4 * e1 - e3 * e2 - e3 * c(e1, 2) - e2 * e2 * e1 + e1 * c(e2, 2)
        - e2 * c(e1, 3)
        - c(e1, 5);
    let eps = [e1, e2, e3, e4, e5];
    if let Some(i) = eps.iter().position(|&e| e < 0) {
        return Err(Error::Inconsistent(format!(
            "Betti sequence gives ε{} = {} < 0",
            i + 1,
            eps[i]
        )));
    }
    Ok(eps)
}

/// `α(t) = 1 − Σ a_i t^{i+1}` through `t⁵`.
pub fn alpha(ranks: &[i64]) -> Series {
    let mut out = [0; SERIES_LEN];
    out[0] = 1;
    for (i, &a) in ranks.iter().enumerate() {
        if i + 2 < SERIES_LEN {
            out[i + 2] -= a;
        }
    }
    out
}

/// `γ(t) = q₁₁t³ + (q₁₁+q₁₂)t⁴ + (q₁₂−b+a)t⁵`.
pub fn gamma(inp: &InvariantInput) -> Series {
    [0, 0, 0, inp.q11, inp.q11 + inp.q12, inp.q12 - inp.b + inp.a]
}

/// `d(t) = α(t) + γ(t)` through `t⁵`.
pub fn poincare_denominator(inp: &InvariantInput) -> Series {
    let (al, ga) = (alpha(&inp.ranks), gamma(inp));
    std::array::from_fn(|k| al[k] + ga[k])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DenominatorInvariants {
    pub q11: i64,
    pub q12: i64,
    pub a_minus_b: i64,
}

/// Recovers `(q₁₁, q₁₂, a−b)` from the coefficients of `d(t)` through `t⁵`.
pub fn invariants_from_denominator(
    n: i64,
    c: i64,
    ranks: &[i64],
    d: &Series,
) -> Result<DenominatorInvariants> {
    if ranks.len() as i64 != c.min(MAX_RANKS) || c > n {
        return Err(Error::Input(
            "expected min(c, 4) homology ranks with c ≤ n".into(),
        ));
    }
    if d[0] != 1 || d[1] != 0 {
        return Err(Error::Inconsistent("denominator must start 1 + 0·t".into()));
    }
    let al = alpha(ranks);
    let g: Series = std::array::from_fn(|k| d[k] - al[k]);
    if g[2] != 0 {
        return Err(Error::Inconsistent(format!(
            "t² coefficient {} disagrees with a1",
            d[2]
        )));
    }
    let q11 = g[3];
    let q12 = g[4] - g[3];
    let a_minus_b = g[5] - q12;
    if q11 < 0 || q12 < 0 {
        return Err(Error::Inconsistent(format!(
            "negative products: q11 = {q11}, q12 = {q12}"
        )));
    }
    Ok(DenominatorInvariants {
        q11,
        q12,
        a_minus_b,
    })
}

/// Quotient of truncated series by `(1+t)^k`.
pub fn divide_by_one_plus_t(s: &Series, k: usize) -> Series {
    let mut out = *s;
    for _ in 0..k {
        for i in 1..SERIES_LEN {
            out[i] -= out[i - 1];
        }
    }
    out
}

/// `1 − t − (a₁−1)t² − (a₃−q₁₁)t³ + q₁₂t⁴ − bt⁵`.
pub fn codepth3_denominator(inp: &InvariantInput) -> Series {
    [
        1,
        -1,
        -(inp.a_i(1) - 1),
        -(inp.a_i(3) - inp.q11),
        inp.q12,
        -inp.b,
    ]
}

/// Division check for codepth at most three. Applies when `a₄ = a = 0` and
/// `1 − a₁ + a₂ − a₃ = 0`; returns `None` otherwise.
pub fn codepth3_check(inp: &InvariantInput) -> Option<bool> {
    let applies = inp.a_i(4) == 0 && inp.a == 0 && 1 - inp.a_i(1) + inp.a_i(2) - inp.a_i(3) == 0;
    applies
        .then(|| divide_by_one_plus_t(&poincare_denominator(inp), 1) == codepth3_denominator(inp))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub betti: Series,
    pub bound: Series,
    pub defect: Series,
    pub deviations: [i64; 5],
    pub deviations_from_betti: Option<[i64; 5]>,
    pub denominator: Series,
    pub alpha: Series,
    pub gamma: Series,
    /// `𝒫_i = b_i − β_i` for every `i`.
    pub defect_consistent: bool,
    pub deviations_agree: bool,
    pub round_trip: bool,
    pub codepth3: Option<bool>,
}

impl InvariantReport {
    pub fn compute(inp: &InvariantInput) -> Result<Self> {
        inp.validate()?;
        let betti = betti_formula(inp);
        let bound: Series = golod_bound(inp.n, &inp.ranks, SERIES_LEN)
            .try_into()
            .expect("length");
        let defect = golod_defect(inp);
        let deviations = deviations_formula(inp);
        let from_betti = deviations_from_betti(&betti).ok();
        let denominator = poincare_denominator(inp);
        let round_trip = invariants_from_denominator(inp.n, inp.c, &inp.ranks, &denominator).ok()
            == Some(DenominatorInvariants {
                q11: inp.q11,
                q12: inp.q12,
                a_minus_b: inp.a - inp.b,
            });
        Ok(InvariantReport {
            betti,
            bound,
            defect,
            deviations,
            deviations_from_betti: from_betti,
            denominator,
            alpha: alpha(&inp.ranks),
            gamma: gamma(inp),
            defect_consistent: (0..SERIES_LEN).all(|i| defect[i] == bound[i] - betti[i]),
            deviations_agree: from_betti == Some(deviations),
            round_trip,
            codepth3: codepth3_check(inp),
        })
    }

    /// `𝒫_i ≥ 0` for all `i`.
    pub fn serre_inequality(&self) -> bool {
        self.defect.iter().all(|&p| p >= 0)
    }
}

/// A row of the table of algebra invariants of Gorenstein rings of
/// codepth four, by Kustin–Miller class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GorensteinClass {
    pub class: String,
    pub q11: i64,
    pub q12: i64,
    pub q22: i64,
    pub q13: i64,
    pub a: i64,
    pub b: i64,
}

const GORENSTEIN_TABLE: &str = include_str!("../data/gorenstein_codepth4.tsv");

/// The shipped table; the parametric class `GH(p)` is instantiated at `p`.
pub fn gorenstein_codepth4_table(p: i64) -> Result<Vec<GorensteinClass>> {
    let eval = |field: &str| -> Result<i64> {
        let field = field.trim();
        let (base, add) = match field.split_once('+') {
            Some((x, y)) => (
                x.trim(),
                y.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::Input(e.to_string()))?,
            ),
            None => (field, 0),
        };
        let v = if base == "p" {
            p
        } else {
            base.parse::<i64>()
                .map_err(|e| Error::Input(e.to_string()))?
        };
        Ok(v + add)
    };
    GORENSTEIN_TABLE
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let f: Vec<&str> = l.split('\t').collect();
            if f.len() != 7 {
                return Err(Error::Input(format!("malformed table row `{l}`")));
            }
            Ok(GorensteinClass {
                class: f[0].replace("(p)", &format!("({p})")),
                q11: eval(f[1])?,
                q12: eval(f[2])?,
                q22: eval(f[3])?,
                q13: eval(f[4])?,
                a: eval(f[5])?,
                b: eval(f[6])?,
            })
        })
        .collect()
}

/// Input for a Gorenstein ring of codepth four: `a₂ = 2a₁−2`, `a₃ = a₁`, `a₄ = 1`.
pub fn gorenstein_codepth4_input(n: i64, a1: i64, row: &GorensteinClass) -> InvariantInput {
    InvariantInput {
        n,
        c: 4,
        ranks: vec![a1, 2 * a1 - 2, a1, 1],
        q11: row.q11,
        q12: row.q12,
        q13: row.q13,
        q22: row.q22,
        a: row.a,
        b: row.b,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flagship() -> InvariantInput {
        InvariantInput {
            n: 4,
            c: 4,
            ranks: vec![7, 15, 14, 5],
            q11: 7,
            q12: 10,
            q13: 0,
            q22: 2,
            a: 3,
            b: 0,
        }
    }

    fn yoshino(i: i64) -> InvariantInput {
        InvariantInput {
            n: 4,
            c: 4,
            ranks: vec![7, 10 + i, 7 + i, 3],
            q11: 2 + i,
            q12: 8,
            q13: 0,
            q22: 0,
            a: 3,
            b: 0,
        }
    }

    fn roos(i: i64) -> InvariantInput {
        InvariantInput {
            n: 4,
            c: 4,
            ranks: vec![6, 10 + i, 7 + i, 2],
            a: 1,
            ..Default::default()
        }
    }

    #[test]
    fn flagship_numbers() {
        let inp = flagship();
        assert_eq!(betti_formula(&inp), [1, 4, 13, 40, 121, 364]);
        assert_eq!(golod_bound(4, &inp.ranks, 6), vec![1, 4, 13, 47, 166, 585]);
        assert_eq!(golod_defect(&inp), [0, 0, 0, 7, 45, 221]);
        assert_eq!(deviations_formula(&inp), [4, 7, 8, 18, 48]);
        let r = InvariantReport::compute(&inp).unwrap();
        assert!(r.defect_consistent && r.deviations_agree && r.round_trip);
        assert_eq!(r.codepth3, None);
    }

    #[test]
    fn small_rings() {
        let inp = InvariantInput {
            n: 1,
            c: 1,
            ranks: vec![1],
            ..Default::default()
        };
        assert_eq!(betti_formula(&inp), [1; 6]);
        assert_eq!(deviations_formula(&inp), [1, 1, 0, 0, 0]);
        assert_eq!(golod_bound(2, &[3, 2], 6), vec![1, 2, 4, 8, 16, 32]);
        assert_eq!(golod_bound(3, &[], 6), vec![1, 3, 3, 1, 0, 0]);
        let golod = InvariantInput {
            n: 2,
            c: 2,
            ranks: vec![3, 2],
            ..Default::default()
        };
        assert_eq!(
            deviations_from_betti(&betti_formula(&golod)).unwrap(),
            deviations_formula(&golod)
        );
    }

    #[test]
    fn denominators() {
        assert_eq!(poincare_denominator(&yoshino(1)), [1, 0, -7, -8, 3, 8]);
        assert_eq!(poincare_denominator(&roos(1)), [1, 0, -6, -11, -8, -1]);
        for i in 1..=4 {
            let y = yoshino(i);
            let d = poincare_denominator(&y);
            // (1−t)(1−3t)(1+t)⁴ through t⁵
            assert_eq!(d, [1, 0, -7, -8, 3, 8]);
            let back = invariants_from_denominator(4, 4, &y.ranks, &d).unwrap();
            assert_eq!(
                back,
                DenominatorInvariants {
                    q11: y.a_i(2) - 8,
                    q12: 8,
                    a_minus_b: 3
                }
            );
        }
        let back =
            invariants_from_denominator(4, 4, &roos(2).ranks, &poincare_denominator(&roos(2)))
                .unwrap();
        assert_eq!(
            back,
            DenominatorInvariants {
                q11: 0,
                q12: 0,
                a_minus_b: 1
            }
        );
        assert_eq!(golod_defect(&roos(1))[5], 1);
    }

    #[test]
    fn denominator_rejects_bad_input() {
        assert!(invariants_from_denominator(4, 4, &[7, 11, 8, 3], &[1, 1, 0, 0, 0, 0]).is_err());
        assert!(invariants_from_denominator(4, 4, &[7, 11, 8, 3], &[1, 0, -7, -12, 0, 0]).is_err());
    }

    #[test]
    fn codepth_three() {
        // k[x,y,z]/(x²,y²,z²): a = (3,3,1)
        let ci = InvariantInput {
            n: 3,
            c: 3,
            ranks: vec![3, 3, 1],
            q11: 3,
            q12: 1,
            ..Default::default()
        };
        assert_eq!(codepth3_check(&ci), Some(true));
        assert_eq!(
            divide_by_one_plus_t(&poincare_denominator(&ci), 1),
            [1, -1, -2, 2, 1, -0]
        );
    }

    #[test]
    fn gorenstein_table() {
        let rows = gorenstein_codepth4_table(2).unwrap();
        assert_eq!(rows.len(), 4);
        assert_eq!(rows[3].class, "GH(2)");
        assert_eq!((rows[3].q11, rows[3].q12), (2, 3));
        // Complete intersection of codepth four: d(t) = (1−t²)⁴.
        let ci = gorenstein_codepth4_input(4, 4, &rows[0]);
        assert_eq!(poincare_denominator(&ci), [1, 0, -4, 0, 6, 0]);
        assert_eq!(
            divide_by_one_plus_t(&poincare_denominator(&ci), 2),
            [1, -2, -1, 4, -1, -2]
        );
    }

    #[test]
    fn validation() {
        let mut inp = flagship();
        inp.q11 = 16;
        assert!(inp.validate().is_err());
        inp = flagship();
        inp.ranks.pop();
        assert!(inp.validate().is_err());
    }
}
