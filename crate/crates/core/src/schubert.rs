//! Divided differences, classical Schubert polynomials, the expansion of
//! sub-staircase monomials in elementary products, and quantization.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::combinat::{Composition, Permutation};
use crate::error::{Error, Result};
use crate::poly::{det, Family, Monomial, Poly, Var};
use crate::quantum::{HVariant, QuantumAlphabet};

/// `∂_i f = (f - s_i f) / (v_i - v_{i+1})` in the variables of `family`.
pub fn divided_difference(f: &Poly, i: usize, family: Family) -> Poly {
    let vi = Var::single(family, i as i32);
    let vj = Var::single(family, i as i32 + 1);
    let mut out: Vec<(Monomial, BigInt)> = Vec::new();
    for (m, c) in f.terms() {
        let a = m.exponent(vi);
        let b = m.exponent(vj);
        if a == b {
            continue;
        }
        let rest: Vec<(Var, u32)> = m.factors().iter().filter(|(v, _)| *v != vi && *v != vj).cloned().collect();
        let (hi, lo, coeff) = if a > b { (a, b, c.clone()) } else { (b, a, -c) };
        for k in 0..hi - lo {
            let mono = Monomial::from_pairs(rest.iter().cloned().chain([(vi, hi - 1 - k), (vj, lo + k)]));
            out.push((mono, coeff.clone()));
        }
    }
    Poly::from_terms(out)
}

/// `∂_{a_1} ∘ … ∘ ∂_{a_l}` for the word `(a_1, …, a_l)`.
pub fn divided_difference_word(f: &Poly, word: &[usize], family: Family) -> Poly {
    word.iter().rev().fold(f.clone(), |acc, &i| divided_difference(&acc, i, family))
}

/// `∂_w` along the reduced word of `w`.
pub fn divided_difference_w(f: &Poly, w: &Permutation, family: Family) -> Poly {
    divided_difference_word(f, &w.reduced_word(), family)
}

/// `x^{δ_n} = x_1^{n-1} x_2^{n-2} ⋯ x_{n-1}`.
pub fn staircase_monomial(n: usize, family: Family) -> Poly {
    let exps: Vec<u32> = Composition::staircase(n).entries().to_vec();
    Poly::term(1, Monomial::from_exponents(family, &exps))
}

/// Single Schubert polynomial `𝔖_w = ∂_{w^{-1} w_0} x^{δ_n}` in `family`.
pub fn schubert_in(w: &Permutation, family: Family) -> Poly {
    let n = w.n();
    let v = w.inverse().compose(&Permutation::longest(n));
    divided_difference_w(&staircase_monomial(n, family), &v, family)
}

/// Classical single or double Schubert polynomial; the double one uses
/// `𝔖_{w_0}(x, y) = Π_{i+j<=n} (x_i + y_j)`.
pub fn classical_schubert(w: &Permutation, double: bool) -> Poly {
    if !double {
        return schubert_in(w, Family::X);
    }
    let n = w.n();
    let mut top = Poly::one();
    for i in 1..n {
        for j in 1..=n - i {
            top = &top * &(&Poly::x(i) + &Poly::y(j));
        }
    }
    let v = w.inverse().compose(&Permutation::longest(n));
    divided_difference_w(&top, &v, Family::X)
}

/// Coefficients `α_{I,J}` with `x^I = Σ_J α_{I,J} e_J(X_{n-1})`.
#[derive(Debug, Clone)]
pub struct ExpansionTable {
    n: usize,
    comps: Vec<Composition>,
    index: HashMap<Composition, usize>,
    rows: Vec<Vec<(usize, BigInt)>>,
}

impl ExpansionTable {
    pub fn new(n: usize) -> ExpansionTable {
        let comps = Composition::all_sub_staircase(n);
        let index: HashMap<Composition, usize> = comps.iter().cloned().enumerate().map(|(k, c)| (c, k)).collect();
        let size = comps.len();
        // e[J][I] = coefficient of x^I in e_J
        let classical = QuantumAlphabet::classical(Family::X, n);
        let mut e = vec![vec![BigRational::zero(); size]; size];
        for (jdx, j) in comps.iter().enumerate() {
            let p = elementary_product(j, &classical);
            for (m, c) in p.terms() {
                let i = exponents(m, Family::X, n).expect("sub-staircase");
                e[jdx][index[&i]] = BigRational::from_integer(c.clone());
            }
        }
        let inv = invert(e).expect("elementary products form a basis");
        let rows = inv
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(k, v)| {
                        assert!(v.is_integer(), "expansion coefficient is not integral");
                        (k, v.to_integer())
                    })
                    .collect()
            })
            .collect();
        ExpansionTable { n, comps, index, rows }
    }

    /// Shared table for rank `n`, built on first use.
    pub fn cached(n: usize) -> Arc<ExpansionTable> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<ExpansionTable>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(t) = cache.lock().unwrap().get(&n) {
            return t.clone();
        }
        let t = Arc::new(ExpansionTable::new(n));
        cache.lock().unwrap().entry(n).or_insert(t).clone()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn compositions(&self) -> &[Composition] {
        &self.comps
    }

    pub fn expansion(&self, i: &Composition) -> Result<Vec<(&Composition, &BigInt)>> {
        let k = *self.index.get(i).ok_or(Error::NotSubStaircase(self.n))?;
        Ok(self.rows[k].iter().map(|(j, c)| (&self.comps[*j], c)).collect())
    }

    pub fn get(&self, i: &Composition, j: &Composition) -> BigInt {
        match (self.index.get(i), self.index.get(j)) {
            (Some(&a), Some(&b)) => {
                self.rows[a].iter().find(|(k, _)| *k == b).map_or_else(BigInt::zero, |(_, c)| c.clone())
            }
            _ => BigInt::zero(),
        }
    }
}

pub fn monomial_to_elementary(n: usize) -> Arc<ExpansionTable> {
    ExpansionTable::cached(n)
}

/// `e_J(X_{n-1}) = Π_k e_{j_k}(X_{n-k})` over the given (possibly quantum) alphabet.
pub fn elementary_product(j: &Composition, alph: &QuantumAlphabet) -> Poly {
    let n = alph.rank();
    (1..n)
        .map(|k| alph.e(j.get(k - 1) as i64, n - k).expect("within rank"))
        .product()
}

/// Exponent vector of `m` in `family`, checked against the staircase `δ_n`.
fn exponents(m: &Monomial, family: Family, n: usize) -> Result<Composition> {
    let mut exps = vec![0u32; n.saturating_sub(1)];
    for (v, e) in m.factors() {
        if v.family != family {
            continue;
        }
        let k = v.i as usize;
        if v.i < 1 || k >= n || *e as usize > n - k {
            return Err(Error::NotSubStaircase(n));
        }
        exps[k - 1] = *e;
    }
    Ok(Composition::new(exps))
}

fn invert(mut a: Vec<Vec<BigRational>>) -> Option<Vec<Vec<BigRational>>> {
    let n = a.len();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        if !p.is_one() {
            for v in a[col].iter_mut().chain(inv[col].iter_mut()) {
                *v = &*v / &p;
            }
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for k in 0..n {
                if !a[col][k].is_zero() {
                    let d = &factor * &a[col][k];
                    a[r][k] -= d;
                }
                if !inv[col][k].is_zero() {
                    let d = &factor * &inv[col][k];
                    inv[r][k] -= d;
                }
            }
        }
    }
    Some(inv)
}

/// Replaces each sub-staircase monomial `x^I` by `Σ_J α_{I,J} e^q_J`,
/// linearly over all other symbols.
pub fn quantize(f: &Poly, alph: &QuantumAlphabet) -> Result<Poly> {
    let n = alph.rank();
    let family = alph.base();
    let table = ExpansionTable::cached(n);
    let mut products: HashMap<&Composition, Poly> = HashMap::new();
    let mut out = Poly::zero();
    for (m, coeff) in f.collect_in(&[family]) {
        let i = exponents(&m, family, n)?;
        let mut image = Poly::zero();
        for (j, a) in table.expansion(&i)? {
            let e = products.entry(j).or_insert_with(|| elementary_product(j, alph));
            image += e.scale(a);
        }
        out += &coeff * &image;
    }
    Ok(out)
}

/// `s^q_I = det(h^q_{i_α - α + β}(X_α))_{1 <= α, β <= n-1}`.
pub fn quantum_s_i(i: &Composition, alph: &QuantumAlphabet) -> Result<Poly> {
    let n = alph.rank();
    let m = n.saturating_sub(1);
    let rows: Vec<Vec<Poly>> = (1..=m)
        .map(|a| {
            (1..=m)
                .map(|b| alph.h(i.get(a - 1) as i64 - a as i64 + b as i64, a, HVariant::Auto))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    det(&rows)
}

/// `𝔖^q_w`: quantization of the classical Schubert polynomial in the alphabet's family.
pub fn quantum_schubert(w: &Permutation, alph: &QuantumAlphabet) -> Poly {
    quantize(&schubert_in(w, alph.base()), alph).expect("Schubert polynomials are sub-staircase")
}

/// `𝔖^{q,q'}_w = Σ_u 𝔖^q_u(X) 𝔖^{q'}_{u w^{-1}}(Y)` over `l(u) + l(u w^{-1}) = l(w)`.
pub fn double_quantum_schubert(w: &Permutation, x: &QuantumAlphabet, y: &QuantumAlphabet) -> Poly {
    let winv = w.inverse();
    Permutation::all(w.n())
        .into_iter()
        .filter_map(|u| {
            let v = u.compose(&winv);
            (u.length() + v.length() == w.length()).then(|| &quantum_schubert(&u, x) * &quantum_schubert(&v, y))
        })
        .sum()
}

/// Checks that `|det|` of the transition matrix is one, i.e. the table is
/// invertible over the integers.
pub fn expansion_is_unimodular(table: &ExpansionTable) -> bool {
    let size = table.comps.len();
    let m: Vec<Vec<BigRational>> = (0..size)
        .map(|a| {
            let mut row = vec![BigRational::zero(); size];
            for (k, c) in &table.rows[a] {
                row[*k] = BigRational::from_integer(c.clone());
            }
            row
        })
        .collect();
    rational_det(m).abs().is_one()
}

fn rational_det(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut d = BigRational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if pivot != col {
            a.swap(col, pivot);
            d = -d;
        }
        let p = a[col][col].clone();
        d *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &p;
            for k in col..n {
                let v = &factor * &a[col][k];
                a[r][k] -= v;
            }
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn divided_difference_basics() {
        assert!(divided_difference(&Poly::x(1), 1, Family::X).is_one());
        assert!(divided_difference(&(&Poly::x(1) * &Poly::x(2)), 1, Family::X).is_zero());
        assert_eq!(divided_difference(&Poly::x(1).pow(2), 1, Family::X).to_text(), "x1 + x2");
        let f = Poly::parse("x1^2*x2").unwrap();
        assert!(divided_difference_w(&f, &Permutation::longest(3), Family::X).is_one());
        assert!(divided_difference_word(&f, &[2, 1, 2], Family::X).is_one());
    }

    #[test]
    fn small_schubert() {
        let cases = [("123", "1"), ("213", "x1"), ("132", "x1 + x2"), ("231", "x1*x2"), ("312", "x1^2"), ("321", "x1^2*x2")];
        for (w, s) in cases {
            assert_eq!(classical_schubert(&perm(w), false), Poly::parse(s).unwrap(), "{w}");
        }
        assert_eq!(classical_schubert(&perm("21"), true).to_text(), "x1 + y1");
    }

    #[test]
    fn expansion_examples() {
        let t = ExpansionTable::new(3);
        let c = |v: &[u32]| Composition::new(v.to_vec());
        assert_eq!(t.get(&c(&[2, 0]), &c(&[1, 1])), 1.into());
        assert_eq!(t.get(&c(&[2, 0]), &c(&[2, 0])), (-1).into());
        assert_eq!(t.expansion(&c(&[1, 1])).unwrap().len(), 1);
        assert_eq!(t.get(&c(&[1, 1]), &c(&[2, 0])), 1.into());
        for n in 1..=4 {
            assert!(expansion_is_unimodular(&ExpansionTable::new(n)));
        }
    }

    #[test]
    fn quantize_examples() {
        let a = QuantumAlphabet::x(3);
        assert_eq!(quantize(&Poly::parse("x1*x2").unwrap(), &a).unwrap().to_text(), "x1*x2 + q1");
        assert_eq!(quantize(&Poly::parse("x1^2").unwrap(), &a).unwrap().to_text(), "x1^2 - q1");
        assert!(quantize(&Poly::one(), &a).unwrap().is_one());
        assert!(matches!(quantize(&Poly::parse("x1^3").unwrap(), &a), Err(Error::NotSubStaircase(3))));
        assert_eq!(quantum_schubert(&perm("312"), &a).to_text(), "x1^2 - q1");
    }

    #[test]
    fn quantize_matches_s_i() {
        for n in 1..=4 {
            let a = QuantumAlphabet::x(n);
            for i in Composition::all_sub_staircase(n) {
                let mono = Poly::term(1, Monomial::from_exponents(Family::X, i.entries()));
                assert_eq!(quantize(&mono, &a).unwrap(), quantum_s_i(&i, &a).unwrap(), "I={i}");
            }
        }
    }

    #[test]
    fn double_quantum_small() {
        let x = QuantumAlphabet::x(2);
        let y = QuantumAlphabet::new(Family::Y, Some(Family::QP), 2);
        assert!(double_quantum_schubert(&Permutation::identity(2), &x, &y).is_one());
        assert_eq!(double_quantum_schubert(&perm("21"), &x, &y).to_text(), "x1 + y1");
    }
}
