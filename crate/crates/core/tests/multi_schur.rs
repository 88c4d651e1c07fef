use schubert_core::quantum::{quantum_super_multi_schur, QuantumAlphabet};
use schubert_core::schur::{generalized_schur, schur, x_alphabet, CoefficientSequence, SchurMethod};
use schubert_core::{Family, Partition, Poly, Var};

fn negate_y(f: &Poly) -> Poly {
    f.substitute_with(|v| (v.family == Family::Y).then(|| -Poly::y(v.i as usize)))
}

// With q = q' = 0 and every row on the same pair of alphabets, the quantum
// super determinant is the skew super Schur function of X_k - Y_l after y -> -y.
#[test]
fn classical_limit_matches_super_schur() {
    let x = QuantumAlphabet::classical(Family::X, 8);
    let y = QuantumAlphabet::classical(Family::Y, 8);
    let shapes = Partition::up_to_size(4);
    for k in 0..=3 {
        for l in 0..=2 {
            let xs: Vec<Var> = (1..=k).map(Var::x).collect();
            let ys: Vec<Var> = (1..=l).map(Var::y).collect();
            let series = CoefficientSequence::super_series(&xs, &ys, 8);
            for lam in shapes.iter().filter(|s| s.len() <= 2) {
                for mu in shapes.iter().filter(|m| lam.contains(m)) {
                    let flags = vec![(k, l); 2];
                    let multi = quantum_super_multi_schur(lam, mu, &flags, &x, &y).unwrap();
                    let direct = generalized_schur(&series, lam, mu).unwrap();
                    assert_eq!(negate_y(&multi), direct, "λ={lam} μ={mu} k={k} l={l}");
                }
            }
        }
    }
}

#[test]
fn empty_second_alphabet_gives_schur() {
    let x = QuantumAlphabet::classical(Family::X, 8);
    let y = QuantumAlphabet::classical(Family::Y, 8);
    for lam in Partition::in_box(3, 3) {
        let flags = vec![(3, 0); 3];
        let multi = quantum_super_multi_schur(&lam, &Partition::empty(), &flags, &x, &y).unwrap();
        assert_eq!(multi, schur(&lam, &x_alphabet(3), SchurMethod::JacobiTrudi).unwrap(), "λ={lam}");
    }
}
