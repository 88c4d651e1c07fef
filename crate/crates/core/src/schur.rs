//! Classical Schur functions, generalized Schur minors and the ninth
//! variation in the symbols `h_i(k)`.

use crate::check::Check;
use crate::combinat::Partition;
use crate::error::{Error, Result};
use crate::poly::{det, Family, Poly, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EH {
    E,
    H,
}

/// `e_r` or `h_r` of an alphabet.
pub fn elem_complete(kind: EH, r: i64, alphabet: &[Var]) -> Poly {
    match kind {
        EH::E => elementary(r, alphabet),
        EH::H => complete(r, alphabet),
    }
}

pub fn elementary(r: i64, alphabet: &[Var]) -> Poly {
    if r < 0 || r as usize > alphabet.len() {
        return Poly::zero();
    }
    let r = r as usize;
    let mut e = vec![Poly::zero(); r + 1];
    e[0] = Poly::one();
    for (k, v) in alphabet.iter().enumerate() {
        let x = Poly::var(*v);
        for i in (1..=r.min(k + 1)).rev() {
            let add = &x * &e[i - 1];
            e[i] += add;
        }
    }
    e.pop().unwrap()
}

pub fn complete(r: i64, alphabet: &[Var]) -> Poly {
    if r < 0 {
        return Poly::zero();
    }
    let r = r as usize;
    let mut h = vec![Poly::zero(); r + 1];
    h[0] = Poly::one();
    for v in alphabet {
        let x = Poly::var(*v);
        for i in 1..=r {
            let add = &x * &h[i - 1];
            h[i] += add;
        }
    }
    h.pop().unwrap()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchurMethod {
    Alternant,
    JacobiTrudi,
    NaegelsbachKostka,
    FlaggedH,
    FlaggedE,
}

impl SchurMethod {
    pub const ALL: [SchurMethod; 5] = [
        SchurMethod::Alternant,
        SchurMethod::JacobiTrudi,
        SchurMethod::NaegelsbachKostka,
        SchurMethod::FlaggedH,
        SchurMethod::FlaggedE,
    ];
}

/// `s_λ` of the alphabet by the chosen formula.
pub fn schur(lambda: &Partition, alphabet: &[Var], method: SchurMethod) -> Result<Poly> {
    let n = alphabet.len();
    if method == SchurMethod::Alternant {
        if lambda.len() > n {
            return Err(Error::ShapeTooLong(n));
        }
        return Ok(alternant(lambda, alphabet));
    }
    if lambda.len() > n {
        return Ok(Poly::zero());
    }
    let prefix = |k: i64| -> &[Var] { &alphabet[..k.clamp(0, n as i64) as usize] };
    let m = match method {
        SchurMethod::JacobiTrudi => {
            let l = lambda.len();
            square(l, |i, j| complete(lambda.part(i) as i64 - i as i64 + j as i64, alphabet))
        }
        SchurMethod::NaegelsbachKostka => {
            let conj = lambda.conjugate();
            let l = conj.len();
            square(l, |i, j| elementary(conj.part(i) as i64 - i as i64 + j as i64, alphabet))
        }
        SchurMethod::FlaggedH => square(n, |i, j| {
            complete(
                lambda.part(i) as i64 - i as i64 + j as i64,
                prefix(n as i64 + 1 - j as i64),
            )
        }),
        SchurMethod::FlaggedE => {
            let conj = lambda.conjugate();
            let l = conj.len();
            let ext = extend(alphabet, l.saturating_sub(1));
            square(l, |i, j| {
                elementary(conj.part(i) as i64 - i as i64 + j as i64, &ext[..n + j - 1])
            })
        }
        SchurMethod::Alternant => unreachable!(),
    };
    det(&m)
}

fn square(n: usize, f: impl Fn(usize, usize) -> Poly) -> Vec<Vec<Poly>> {
    (1..=n).map(|i| (1..=n).map(|j| f(i, j)).collect()).collect()
}

// Appends `extra` fresh variables of the alphabet's family.
fn extend(alphabet: &[Var], extra: usize) -> Vec<Var> {
    let mut out = alphabet.to_vec();
    let family = alphabet.first().map_or(Family::X, |v| v.family);
    let top = alphabet.iter().filter(|v| v.family == family).map(|v| v.i).max().unwrap_or(0);
    out.extend((1..=extra as i32).map(|k| Var::single(family, top + k)));
    out
}

fn alternant(lambda: &Partition, alphabet: &[Var]) -> Poly {
    let n = alphabet.len();
    let lam = lambda.padded(n);
    let num = square(n, |i, j| Poly::var(alphabet[i - 1]).pow((lam[j - 1] + n - j) as u32));
    let den = square(n, |i, j| Poly::var(alphabet[i - 1]).pow((n - j) as u32));
    let num = det(&num).expect("square");
    let den = det(&den).expect("square");
    num.exact_divide(&den).expect("alternant quotient")
}

pub fn x_alphabet(n: usize) -> Vec<Var> {
    (1..=n).map(Var::x).collect()
}

pub fn y_alphabet(n: usize) -> Vec<Var> {
    (1..=n).map(Var::y).collect()
}

/// `Σ_{λ ⊆ (m^n)} s_λ(X_n) s_{λ̂'}(Y_m)` against `Π (x_i + y_j)`.
pub fn cauchy_check(n: usize, m: usize) -> Check {
    cauchy_check_against(n, m, &cauchy_product(n, m, 1))
}

pub fn cauchy_product(n: usize, m: usize, y_sign: i64) -> Poly {
    let mut rhs = Poly::one();
    for i in 1..=n {
        for j in 1..=m {
            rhs = &rhs * &(&Poly::x(i) + &Poly::y(j).scale(&y_sign.into()));
        }
    }
    rhs
}

pub fn cauchy_check_against(n: usize, m: usize, rhs: &Poly) -> Check {
    let xs = x_alphabet(n);
    let ys = y_alphabet(m);
    let mut lhs = Poly::zero();
    for lam in Partition::in_box(n, m) {
        let hat = lam.complement(n, m).expect("in box").conjugate();
        let a = schur(&lam, &xs, SchurMethod::JacobiTrudi).expect("fits");
        let b = schur(&hat, &ys, SchurMethod::JacobiTrudi).expect("fits");
        lhs += &a * &b;
    }
    Check::compare(&lhs, rhs)
}

/// Coefficients `s_k` of a formal series `Σ z^k s_k` with `s_0 = 1`.
#[derive(Debug, Clone)]
pub struct CoefficientSequence {
    terms: Vec<Poly>,
}

impl CoefficientSequence {
    /// A finitely supported sequence; `terms[0]` must be 1.
    pub fn finite(mut terms: Vec<Poly>) -> CoefficientSequence {
        if terms.is_empty() {
            terms.push(Poly::one());
        }
        assert!(terms[0].is_one(), "s_0 must be 1");
        CoefficientSequence { terms }
    }

    /// `Π_j (1 - z y_j) / Π_i (1 - z x_i)` up to degree `max_degree`,
    /// by truncated series division.
    pub fn super_series(x: &[Var], y: &[Var], max_degree: usize) -> CoefficientSequence {
        let num: Vec<Poly> = (0..=max_degree)
            .map(|j| elementary(j as i64, y).scale(&sign(j)))
            .collect();
        let den: Vec<Poly> = (0..=max_degree)
            .map(|j| elementary(j as i64, x).scale(&sign(j)))
            .collect();
        let mut s: Vec<Poly> = Vec::with_capacity(max_degree + 1);
        for k in 0..=max_degree {
            let mut v = num[k].clone();
            for j in 1..=k {
                if !den[j].is_zero() {
                    v -= &den[j] * &s[k - j];
                }
            }
            s.push(v);
        }
        CoefficientSequence { terms: s }
    }

    pub fn get(&self, k: i64) -> Poly {
        if k < 0 {
            return Poly::zero();
        }
        self.terms.get(k as usize).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn max_degree(&self) -> usize {
        self.terms.len() - 1
    }
}

fn sign(j: usize) -> num_bigint::BigInt {
    if j.is_multiple_of(2) {
        1.into()
    } else {
        (-1).into()
    }
}

/// The minor `det(s_{λ_i - μ_j - i + j})` of the Hankel matrix of `f`.
pub fn generalized_schur(f: &CoefficientSequence, lambda: &Partition, mu: &Partition) -> Result<Poly> {
    if !lambda.contains(mu) {
        return Err(Error::NotContained);
    }
    let n = lambda.len();
    let lam = lambda.padded(n);
    let mu = mu.padded(n);
    det(&square(n, |i, j| {
        f.get(lam[i - 1] as i64 - mu[j - 1] as i64 - i as i64 + j as i64)
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NinthForm {
    HDet,
    EDet,
    Giambelli,
}

/// The shift automorphism `φ^k`, `h_i(j) ↦ h_i(j + k)`.
pub fn phi(f: &Poly, k: i32) -> Poly {
    if k == 0 {
        return f.clone();
    }
    f.map_vars(|v| if v.family == Family::H { Var::pair(Family::H, v.i, v.j + k) } else { v })
}

/// `s_{λ/μ}(h)` in the chosen form, then shifted by `φ^shift`.
pub fn ninth_variation(lambda: &Partition, mu: &Partition, form: NinthForm, shift: i32) -> Result<Poly> {
    if !lambda.contains(mu) {
        return Err(Error::NotContained);
    }
    let v = match form {
        NinthForm::HDet => ninth_h_minor(lambda, mu),
        NinthForm::EDet => ninth_e_minor(lambda, mu),
        NinthForm::Giambelli => {
            if !mu.is_empty() {
                return Err(Error::Usage("Giambelli form needs an empty inner shape".into()));
            }
            ninth_giambelli(lambda)
        }
    };
    Ok(phi(&v, shift))
}

/// `det(φ^{μ_j - j + 1} h_{λ_i - μ_j - i + j})` without the containment check.
pub fn ninth_h_minor(lambda: &Partition, mu: &Partition) -> Poly {
    let n = lambda.len().max(mu.len());
    let lam = lambda.padded(n);
    let mu = mu.padded(n);
    det(&square(n, |i, j| {
        let deg = lam[i - 1] as i32 - mu[j - 1] as i32 - i as i32 + j as i32;
        Poly::h(deg, mu[j - 1] as i32 - j as i32 + 1)
    }))
    .expect("square")
}

/// `e_r(h) = s_{(1^r)}(h)`.
pub fn ninth_e(r: i64) -> Poly {
    if r < 0 {
        return Poly::zero();
    }
    ninth_h_minor(&Partition::new(vec![1; r as usize]), &Partition::empty())
}

/// `det(φ^{-μ'_j + j - 1} e_{λ'_i - μ'_j - i + j})`.
pub fn ninth_e_minor(lambda: &Partition, mu: &Partition) -> Poly {
    let lc = lambda.conjugate();
    let mc = mu.conjugate();
    let n = lc.len().max(mc.len());
    let lam = lc.padded(n);
    let mu = mc.padded(n);
    det(&square(n, |i, j| {
        let deg = lam[i - 1] as i64 - mu[j - 1] as i64 - i as i64 + j as i64;
        phi(&ninth_e(deg), -(mu[j - 1] as i32) + j as i32 - 1)
    }))
    .expect("square")
}

/// `det(s_{(α_i | β_j)})` over the Frobenius coordinates of `λ`.
pub fn ninth_giambelli(lambda: &Partition) -> Poly {
    let (alpha, beta) = lambda.frobenius();
    let r = alpha.len();
    det(&square(r, |i, j| {
        let hook = Partition::from_frobenius(&[alpha[i - 1]], &[beta[j - 1]]).expect("hook");
        ninth_h_minor(&hook, &Partition::empty())
    }))
    .expect("square")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn basics() {
        let xs = x_alphabet(2);
        assert_eq!(elementary(2, &xs).to_text(), "x1*x2");
        assert_eq!(complete(2, &xs[..1]).to_text(), "x1^2");
        assert_eq!(schur(&p(&[2, 1]), &xs, SchurMethod::Alternant).unwrap().to_text(), "x1^2*x2 + x1*x2^2");
        assert!(matches!(schur(&p(&[1, 1, 1]), &xs, SchurMethod::Alternant), Err(Error::ShapeTooLong(2))));
    }

    #[test]
    fn methods_agree() {
        for n in 0..=4 {
            let xs = x_alphabet(n);
            for lam in Partition::in_box(3, 3) {
                let vals: Vec<Poly> = SchurMethod::ALL
                    .iter()
                    .filter(|m| **m != SchurMethod::Alternant || lam.len() <= n)
                    .map(|m| schur(&lam, &xs, *m).unwrap())
                    .collect();
                assert!(vals.windows(2).all(|w| w[0] == w[1]), "λ={lam} n={n}");
            }
        }
    }

    #[test]
    fn cauchy() {
        for n in 1..=3 {
            for m in 1..=3 {
                assert!(cauchy_check(n, m).pass);
            }
        }
        let bad = cauchy_check_against(2, 2, &cauchy_product(2, 2, -1));
        assert!(!bad.pass && !bad.witness.is_zero());
    }

    #[test]
    fn super_series() {
        let f = CoefficientSequence::super_series(&[Var::x(1)], &[Var::y(1)], 4);
        assert_eq!(generalized_schur(&f, &p(&[1]), &p(&[])).unwrap().to_text(), "x1 - y1");
        assert!(generalized_schur(&f, &p(&[2, 1]), &p(&[2, 1])).unwrap().is_one());
        // s_k(X - Y) = Σ_j h_{k-j}(X) (-1)^j e_j(Y)
        let xs = x_alphabet(2);
        let ys = y_alphabet(2);
        let f = CoefficientSequence::super_series(&xs, &ys, 6);
        for k in 0..=6i64 {
            let direct: Poly = (0..=k)
                .map(|j| (&complete(k - j, &xs) * &elementary(j, &ys)).scale(&sign(j as usize)))
                .sum();
            assert_eq!(f.get(k), direct);
        }
        assert!(matches!(generalized_schur(&f, &p(&[1]), &p(&[2])), Err(Error::NotContained)));
    }

    #[test]
    fn ninth_variation_forms() {
        assert_eq!(ninth_variation(&p(&[1]), &p(&[]), NinthForm::HDet, 0).unwrap().to_text(), "h[1,0]");
        let s11 = ninth_variation(&p(&[1, 1]), &p(&[]), NinthForm::HDet, 0).unwrap();
        assert_eq!(s11, &(&Poly::h(1, 0) * &Poly::h(1, -1)) - &Poly::h(2, -1));
        let lams = Partition::up_to_size(5);
        for lam in lams.iter().filter(|l| p(&[2, 2, 1]).contains(l)) {
            for mu in lams.iter().filter(|m| lam.contains(m)) {
                assert_eq!(ninth_h_minor(lam, mu), ninth_e_minor(lam, mu), "λ={lam} μ={mu}");
            }
        }
        for lam in Partition::up_to_size(6) {
            assert_eq!(ninth_giambelli(&lam), ninth_h_minor(&lam, &p(&[])), "λ={lam}");
        }
    }

    #[test]
    fn ninth_variation_vanishing_and_shift() {
        let lams = Partition::up_to_size(4);
        for lam in &lams {
            for mu in &lams {
                if !lam.contains(mu) {
                    assert!(ninth_h_minor(lam, mu).is_zero(), "λ={lam} μ={mu}");
                }
            }
        }
        let lam = p(&[2, 1]);
        let shifted = ninth_variation(&lam, &p(&[]), NinthForm::HDet, 3).unwrap();
        assert_eq!(shifted, phi(&ninth_h_minor(&lam, &p(&[])), 3));
        assert_eq!(phi(&phi(&shifted, -3), 3), shifted);
    }

    #[test]
    fn ninth_variation_specializes() {
        for big_n in 1..=3 {
            let xs = x_alphabet(big_n);
            for lam in Partition::in_box(2, 3) {
                let s = ninth_h_minor(&lam, &p(&[]));
                let specialized = s.substitute_with(|v| {
                    (v.family == Family::H).then(|| complete(v.i as i64, &xs))
                });
                assert_eq!(specialized, schur(&lam, &xs, SchurMethod::JacobiTrudi).unwrap());
            }
        }
    }
}
