//! The explicit autotopisms of the graph of `C_p` and the chase of a codeword
//! to `0̄`.

use super::Isotopism;
use crate::algebra::{sign, Permutation, Symbol, TwoIndexed};
use crate::code::MdsCode;
use crate::error::{Error, Result};

fn triple(p: usize, f: [&dyn Fn(i64, u8) -> (i64, u8); 3]) -> Isotopism {
    let view = TwoIndexed::new(p);
    let taus = f
        .iter()
        .map(|g| {
            Permutation::from_fn(2 * p, |s| {
                let (x, bit) = view.split(s);
                let (r, b) = g(x, bit);
                view.index(r, b)
            })
            .expect("formula defines a permutation")
        })
        .collect();
    Isotopism::new(taus)
}

/// `x_ζ ↦ ((−1)^β x + ζβ)_ζ`, `y_ξ ↦ y_{ξ⊕β}`, `z_ψ ↦ z_{ψ⊕β}`.
pub fn cp_autotopism_a1(p: usize, beta: u8) -> Isotopism {
    let beta = beta & 1;
    triple(
        p,
        [
            &|x, z| (sign(beta) * x + (z & beta) as i64, z),
            &|y, xi| (y, xi ^ beta),
            &|z, psi| (z, psi ^ beta),
        ],
    )
}

/// `x_ζ ↦ (x − (−1)^{ζ⊕α} a′)_ζ`, `y_ξ ↦ (y − b)_ξ`,
/// `z_ψ ↦ (z − (−1)^{ψ⊕α} a′ − b)_ψ`.
pub fn cp_autotopism_a2(p: usize, a_prime: usize, b: usize, alpha: u8) -> Isotopism {
    let (a, b, alpha) = (a_prime as i64, b as i64, alpha & 1);
    triple(
        p,
        [
            &|x, z| (x - sign(z ^ alpha) * a, z),
            &|y, xi| (y - b, xi),
            &|z, psi| (z - sign(psi ^ alpha) * a - b, psi),
        ],
    )
}

/// `x_ζ ↦ ((−1)^α x)_{ζ⊕α}`, `y_ξ ↦ ((−1)^α y − αξ)_ξ`, `z_ψ ↦ ((−1)^α z)_{ψ⊕α}`.
pub fn cp_autotopism_a3(p: usize, alpha: u8) -> Isotopism {
    let alpha = alpha & 1;
    triple(
        p,
        [
            &|x, z| (sign(alpha) * x, z ^ alpha),
            &|y, xi| (sign(alpha) * y - (alpha & xi) as i64, xi),
            &|z, psi| (sign(alpha) * z, psi ^ alpha),
        ],
    )
}

/// The composite `a3(α) ∘ a2(a′, b, α) ∘ a1(β)` for the codeword
/// `(a_α, b_β, c_γ)`, with `a′ = (−1)^β a + αβ`. It sends the codeword to `0̄`.
pub fn chase_to_zero_cp(p: usize, code: &MdsCode, word: &[Symbol]) -> Result<Isotopism> {
    if !code.contains(word) {
        return Err(Error::NotACodeword(word.to_vec()));
    }
    if code.q() != 2 * p || code.n() != 3 {
        return Err(Error::InvalidSpec(format!("expected a length-3 code over Q_{}", 2 * p)));
    }
    let view = TwoIndexed::new(p);
    let (a, alpha) = view.split(word[0]);
    let (b, beta) = view.split(word[1]);
    let a_prime = (sign(beta) * a + (alpha & beta) as i64).rem_euclid(p as i64) as usize;
    let g1 = cp_autotopism_a1(p, beta);
    let g2 = cp_autotopism_a2(p, a_prime, b as usize, alpha);
    let g3 = cp_autotopism_a3(p, alpha);
    Ok(g3.compose_unchecked(&g2.compose_unchecked(&g1)))
}

/// Every map (1)–(3) over all parameter choices: these generate `IC_p`.
pub fn ic_p_generators(p: usize) -> Vec<Isotopism> {
    let mut out = Vec::with_capacity(2 * p * p + 4);
    for beta in 0..2 {
        out.push(cp_autotopism_a1(p, beta));
    }
    for a in 0..p {
        for b in 0..p {
            for alpha in 0..2 {
                out.push(cp_autotopism_a2(p, a, b, alpha));
            }
        }
    }
    for alpha in 0..2 {
        out.push(cp_autotopism_a3(p, alpha));
    }
    out
}

/// The maps (1) with `β = 1`, (2) with `a′ = 0` and any `b`, and (3) with
/// `α = 1`. They generate a regular subgroup of `IC_p` of order `4p²`.
pub fn ic_p_regular_generators(p: usize) -> Vec<Isotopism> {
    let mut out = vec![cp_autotopism_a1(p, 1)];
    out.extend((0..p).map(|b| cp_autotopism_a2(p, 0, b, 0)));
    out.push(cp_autotopism_a3(p, 1));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loops::make_cp;

    #[test]
    fn trivial_parameters() {
        assert!(cp_autotopism_a1(3, 0).is_identity());
        assert!(cp_autotopism_a2(5, 0, 0, 1).is_identity());
        assert!(cp_autotopism_a3(3, 0).is_identity());
    }

    #[test]
    fn every_generator_is_an_autotopism() {
        for p in [3, 5] {
            let m = make_cp(p).unwrap().graph();
            let gens = ic_p_generators(p);
            assert_eq!(gens.len(), 2 * p * p + 4);
            assert!(gens.iter().all(|g| g.is_autotopism(&m)));
        }
    }

    #[test]
    fn chase_reaches_zero() {
        for p in [3, 5] {
            let m = make_cp(p).unwrap().graph();
            for w in m.words() {
                let g = chase_to_zero_cp(p, &m, w).unwrap();
                assert_eq!(g.apply_word(w), vec![0, 0, 0]);
                assert!(g.is_autotopism(&m));
            }
        }
    }

    #[test]
    fn stage_images() {
        // (1) sends (a_α, b_β, c_γ) to (a′_α, b_0, c_{γ⊕β})
        let p = 5;
        let m = make_cp(p).unwrap().graph();
        let view = TwoIndexed::new(p);
        for w in m.words() {
            let (a, alpha) = view.split(w[0]);
            let (b, beta) = view.split(w[1]);
            let (c, gamma) = view.split(w[2]);
            let a_prime = sign(beta) * a + (alpha & beta) as i64;
            let img = cp_autotopism_a1(p, beta).apply_word(w);
            assert_eq!(img, vec![view.index(a_prime, alpha), view.index(b, 0), view.index(c, gamma ^ beta)]);
        }
    }

    #[test]
    fn rejects_non_codewords() {
        let m = make_cp(3).unwrap().graph();
        assert!(chase_to_zero_cp(3, &m, &[0, 0, 1]).is_err());
    }
}
