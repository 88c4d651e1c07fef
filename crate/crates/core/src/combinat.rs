//! Permutations, partitions and exponent compositions.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Element of `S_n` in one-line notation, values `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(one_line: Vec<usize>) -> Result<Permutation> {
        let n = one_line.len();
        let mut seen = vec![false; n + 1];
        for &v in &one_line {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation(format!("{one_line:?}")));
            }
            seen[v] = true;
        }
        Ok(Permutation(one_line))
    }

    pub fn identity(n: usize) -> Permutation {
        Permutation((1..=n).collect())
    }

    /// The element of maximal length `w0 = n n-1 ... 1`.
    pub fn longest(n: usize) -> Permutation {
        Permutation((1..=n).rev().collect())
    }

    /// Adjacent transposition `s_i` in `S_n`.
    pub fn simple(i: usize, n: usize) -> Permutation {
        let mut w = Permutation::identity(n);
        w.0.swap(i - 1, i);
        w
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn one_line(&self) -> &[usize] {
        &self.0
    }

    /// `w(i)` for `1 <= i <= n`.
    pub fn at(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(k, &v)| v == k + 1)
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        self.code().iter().map(|&c| c as usize).sum()
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (k, &v) in self.0.iter().enumerate() {
            inv[v - 1] = k + 1;
        }
        Permutation(inv)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.n(), other.n(), "composing permutations of different rank");
        Permutation(other.0.iter().map(|&v| self.0[v - 1]).collect())
    }

    /// Lehmer code: `c_k = #{j > k : w_j < w_k}`, length `n`.
    pub fn code(&self) -> Vec<u32> {
        let w = &self.0;
        (0..w.len())
            .map(|k| w[k + 1..].iter().filter(|&&v| v < w[k]).count() as u32)
            .collect()
    }

    /// Inverse of [`Permutation::code`]. Missing trailing entries count as 0.
    pub fn from_code(code: &[u32], n: usize) -> Result<Permutation> {
        if code.len() > n || !Composition::new(code.to_vec()).is_sub_staircase(n) {
            return Err(Error::InvalidPermutation(format!("code {code:?} for n = {n}")));
        }
        let mut avail: Vec<usize> = (1..=n).collect();
        let mut w = Vec::with_capacity(n);
        for k in 0..n {
            let c = code.get(k).copied().unwrap_or(0) as usize;
            w.push(avail.remove(c));
        }
        Ok(Permutation(w))
    }

    /// Positions `i` with `w(i) > w(i+1)`.
    pub fn descents(&self) -> Vec<usize> {
        (1..self.n()).filter(|&i| self.at(i) > self.at(i + 1)).collect()
    }

    /// Reduced word `(a_1, ..., a_l)` with `w = s_{a_1} ∘ ... ∘ s_{a_l}`, found by
    /// repeatedly sorting the leftmost descent.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.0.clone();
        let mut word = Vec::new();
        while let Some(i) = (0..w.len().saturating_sub(1)).find(|&i| w[i] > w[i + 1]) {
            w.swap(i, i + 1);
            word.push(i + 1);
        }
        word.reverse();
        word
    }

    /// `s_{a_1} ∘ ... ∘ s_{a_l}`.
    pub fn from_word(word: &[usize], n: usize) -> Permutation {
        let mut w = Permutation::identity(n);
        for &a in word {
            w.0.swap(a - 1, a);
        }
        w
    }

    /// All elements of `S_n` in lexicographic order of one-line notation.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Permutation(cur.clone()));
            // next permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }

    /// Shape and descent position of a permutation with at most one descent.
    /// The identity has empty shape and descent 0.
    pub fn grassmannian(&self) -> Result<(Partition, usize)> {
        let d = self.descents();
        match d.as_slice() {
            [] => Ok((Partition::empty(), 0)),
            [r] => {
                let r = *r;
                let parts = (1..=r).rev().map(|i| self.at(i) - i).collect();
                Ok((Partition::new(parts), r))
            }
            _ => Err(Error::NotGrassmannian(self.to_string())),
        }
    }

    pub fn is_grassmannian(&self) -> bool {
        self.descents().len() <= 1
    }

    /// Grassmannian permutation of shape `shape` with descent at `r` in `S_n`.
    pub fn from_grassmannian(shape: &Partition, r: usize, n: usize) -> Result<Permutation> {
        if shape.is_empty() {
            return Ok(Permutation::identity(n));
        }
        if r == 0 || r >= n || shape.len() > r || shape.part(1) > n - r {
            return Err(Error::ShapeTooBig { rows: r, cols: n.saturating_sub(r) });
        }
        let mut w: Vec<usize> = (1..=r).map(|i| i + shape.part(r - i + 1)).collect();
        let rest: Vec<usize> = (1..=n).filter(|v| !w.contains(v)).collect();
        w.extend(rest);
        Permutation::new(w)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for v in &self.0 {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let s: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", s.join(","))
        }
    }
}

impl FromStr for Permutation {
    type Err = Error;
    /// Digit string `"2314"` or comma list `"10,2,..."`.
    fn from_str(s: &str) -> Result<Permutation> {
        let s = s.trim();
        let bad = || Error::InvalidPermutation(s.to_string());
        let vals: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
                .collect::<Result<_>>()?
        };
        if vals.is_empty() {
            return Err(bad());
        }
        Permutation::new(vals)
    }
}

/// Weakly decreasing sequence of positive parts (zeros are dropped).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Sorts decreasingly and drops zero parts.
    pub fn new(mut parts: Vec<usize>) -> Partition {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        parts.retain(|&p| p > 0);
        Partition(parts)
    }

    pub fn empty() -> Partition {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// `λ_i` (1-based), zero beyond the length.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn padded(&self, n: usize) -> Vec<usize> {
        (1..=n.max(self.len())).map(|i| self.part(i)).collect()
    }

    pub fn conjugate(&self) -> Partition {
        let m = self.part(1);
        Partition((1..=m).map(|j| self.0.iter().filter(|&&p| p >= j).count()).collect())
    }

    /// `μ ⊆ λ` as Young diagrams.
    pub fn contains(&self, mu: &Partition) -> bool {
        mu.len() <= self.len() && (1..=mu.len()).all(|i| mu.part(i) <= self.part(i))
    }

    /// `λ̂_i = m − λ_{n−i+1}`, requires `λ ⊆ (m^n)`.
    pub fn complement(&self, n: usize, m: usize) -> Result<Partition> {
        if self.len() > n || self.part(1) > m {
            return Err(Error::ShapeTooBig { rows: n, cols: m });
        }
        Ok(Partition::new((1..=n).map(|i| m - self.part(n - i + 1)).collect()))
    }

    /// Frobenius coordinates `(α | β)` with `α_i = λ_i − i`, `β_i = λ'_i − i`.
    pub fn frobenius(&self) -> (Vec<usize>, Vec<usize>) {
        let conj = self.conjugate();
        let rank = (1..=self.len()).take_while(|&i| self.part(i) >= i).count();
        (
            (1..=rank).map(|i| self.part(i) - i).collect(),
            (1..=rank).map(|i| conj.part(i) - i).collect(),
        )
    }

    pub fn from_frobenius(alpha: &[usize], beta: &[usize]) -> Result<Partition> {
        let r = alpha.len();
        let strictly_decr = |v: &[usize]| v.windows(2).all(|w| w[0] > w[1]);
        if beta.len() != r || !strictly_decr(alpha) || !strictly_decr(beta) {
            return Err(Error::Usage(format!("invalid Frobenius coordinates ({alpha:?}|{beta:?})")));
        }
        // rows 1..r: α_i + i; rows below the Durfee square come from β.
        let mut parts: Vec<usize> = (0..r).map(|i| alpha[i] + i + 1).collect();
        let rows = if r == 0 { 0 } else { beta[0] + 1 };
        for row in r + 1..=rows {
            parts.push((0..r).filter(|&j| beta[j] + j + 1 >= row).count());
        }
        Ok(Partition::new(parts))
    }

    /// All partitions contained in the `rows × cols` rectangle.
    pub fn in_box(rows: usize, cols: usize) -> Vec<Partition> {
        fn rec(rows: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            out.push(Partition::new(cur.clone()));
            if cur.len() == rows {
                return;
            }
            for p in 1..=max {
                cur.push(p);
                rec(rows, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(rows, cols, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    /// All partitions of size at most `max_size`.
    pub fn up_to_size(max_size: usize) -> Vec<Partition> {
        Partition::in_box(max_size, max_size)
            .into_iter()
            .filter(|p| p.size() <= max_size)
            .collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Partition> {
        parse_list(s).map(|v| Partition::new(v.into_iter().map(|x| x as usize).collect()))
    }
}

/// Arbitrary exponent vector `(i_1, i_2, ...)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(entries: Vec<u32>) -> Composition {
        Composition(entries)
    }

    pub fn zero(len: usize) -> Composition {
        Composition(vec![0; len])
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Entry at 0-based position `k`; zero past the end.
    pub fn get(&self, k: usize) -> u32 {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `I ⊆ δ_n`: `i_k ≤ n − k` for every (1-based) position `k`.
    pub fn is_sub_staircase(&self, n: usize) -> bool {
        self.0
            .iter()
            .enumerate()
            .all(|(k, &i)| k < n && (i as usize) < n - k)
    }

    /// The staircase `δ_n` truncated to its first `n − 1` entries.
    pub fn staircase(n: usize) -> Composition {
        Composition((1..n).rev().map(|v| v as u32).collect())
    }

    /// `δ_n − I` on the first `n − 1` positions.
    pub fn staircase_complement(&self, n: usize) -> Composition {
        Composition((0..n.saturating_sub(1)).map(|k| (n - 1 - k) as u32 - self.get(k)).collect())
    }

    /// Every `I ⊆ δ_n` of length `n − 1`, lexicographic order.
    pub fn all_sub_staircase(n: usize) -> Vec<Composition> {
        let mut out = vec![Vec::new()];
        for k in 0..n.saturating_sub(1) {
            let bound = (n - 1 - k) as u32;
            out = out
                .into_iter()
                .flat_map(|v: Vec<u32>| {
                    (0..=bound).map(move |e| {
                        let mut w = v.clone();
                        w.push(e);
                        w
                    })
                })
                .collect();
        }
        out.into_iter().map(Composition).collect()
    }

    /// Pads or truncates to `len` entries (truncation drops only zeros).
    pub fn resized(&self, len: usize) -> Composition {
        debug_assert!(self.0.iter().skip(len).all(|&e| e == 0));
        Composition((0..len).map(|k| self.get(k)).collect())
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl FromStr for Composition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Composition> {
        parse_list(s).map(Composition)
    }
}

fn parse_list(s: &str) -> Result<Vec<u32>> {
    let t = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
    if t.is_empty() {
        return Ok(Vec::new());
    }
    t.split(',')
        .map(|x| {
            x.trim()
                .parse::<u32>()
                .map_err(|_| Error::Usage(format!("cannot parse list {s:?}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn core_examples() {
        assert_eq!(perm("312").code(), vec![2, 0, 0]);
        assert_eq!(perm("312").length(), 2);
        assert_eq!(Permutation::identity(4).code(), vec![0; 4]);
        assert_eq!(Permutation::identity(4).length(), 0);
        assert_eq!(perm("231").inverse(), perm("312"));
        assert!(perm("312").compose(&perm("231")).is_identity());
        assert_eq!(Permutation::longest(5).length(), 10);
    }

    #[test]
    fn invalid_permutations() {
        assert!(Permutation::new(vec![1, 1, 2]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!("12a".parse::<Permutation>().is_err());
        assert!("".parse::<Permutation>().is_err());
        assert_eq!("10,2,3,4,5,6,7,8,9,1".parse::<Permutation>().unwrap().at(1), 10);
    }

    #[test]
    fn reduced_words() {
        assert!(Permutation::identity(3).reduced_word().is_empty());
        assert_eq!(perm("21").reduced_word(), vec![1]);
        assert_eq!(perm("321").reduced_word(), vec![1, 2, 1]);
        for n in 1..=5 {
            for w in Permutation::all(n) {
                let word = w.reduced_word();
                assert_eq!(word.len(), w.length());
                assert_eq!(Permutation::from_word(&word, n), w);
            }
        }
    }

    #[test]
    fn code_bijection_and_lengths() {
        for n in 1..=5 {
            let all = Permutation::all(n);
            assert_eq!(all.len(), (1..=n).product::<usize>());
            let w0 = Permutation::longest(n);
            for w in &all {
                let c = w.code();
                assert!(Composition::new(c.clone()).is_sub_staircase(n));
                assert_eq!(&Permutation::from_code(&c, n).unwrap(), w);
                assert_eq!(w.length() + w.compose(&w0).length(), n * (n - 1) / 2);
            }
            let stairs = Composition::all_sub_staircase(n);
            assert_eq!(stairs.len(), all.len());
        }
    }

    #[test]
    fn grassmannian_shapes() {
        assert_eq!(perm("231").grassmannian().unwrap(), (Partition::new(vec![1, 1]), 2));
        assert_eq!(perm("312").grassmannian().unwrap(), (Partition::new(vec![2]), 1));
        assert!(matches!(perm("321").grassmannian(), Err(Error::NotGrassmannian(_))));
        for n in 2..=5 {
            for w in Permutation::all(n).into_iter().filter(|w| w.is_grassmannian()) {
                let (shape, r) = w.grassmannian().unwrap();
                assert_eq!(Permutation::from_grassmannian(&shape, r, n).unwrap(), w);
                let mut sorted = w.code();
                sorted.sort_unstable_by(|a, b| b.cmp(a));
                let sorted: Vec<usize> = sorted.into_iter().map(|c| c as usize).collect();
                assert_eq!(Partition::new(sorted), shape);
            }
        }
        assert!(Permutation::from_grassmannian(&Partition::new(vec![3]), 1, 3).is_err());
    }

    #[test]
    fn partition_examples() {
        let p21 = Partition::new(vec![2, 1]);
        assert_eq!(p21.conjugate(), p21);
        assert_eq!(Partition::new(vec![1, 0]).complement(2, 1).unwrap(), Partition::new(vec![1, 0]));
        assert_eq!(p21.frobenius(), (vec![1], vec![1]));
        assert!(matches!(p21.complement(1, 2), Err(Error::ShapeTooBig { .. })));
        assert!(p21.contains(&Partition::new(vec![1, 1])));
        assert!(!p21.contains(&Partition::new(vec![3])));
    }

    #[test]
    fn partition_involutions() {
        for lam in Partition::in_box(4, 4) {
            assert_eq!(lam.conjugate().conjugate(), lam);
            assert_eq!(lam.conjugate().size(), lam.size());
            assert_eq!(lam.complement(4, 4).unwrap().complement(4, 4).unwrap(), lam);
            let (a, b) = lam.frobenius();
            assert_eq!(Partition::from_frobenius(&a, &b).unwrap(), lam);
        }
        assert_eq!(Partition::in_box(2, 2).len(), 6);
    }
}
