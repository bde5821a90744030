//! In-place fast Walsh–Hadamard transform, `H^{⊗n}` in `O(N log N)`.

use num_complex::Complex64;

use crate::qstate::RegisterState;

/// Unnormalized butterfly `(a, b) -> (a + b, a - b)` over every qubit.
pub fn fwht_unnormalized(data: &mut [Complex64]) {
    let len = data.len();
    assert!(len.is_power_of_two(), "length must be a power of two");
    let mut h = 1;
    while h < len {
        for block in data.chunks_exact_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
}

/// `H^{⊗n} |ψ⟩`.
pub fn hadamard_all(state: &RegisterState) -> RegisterState {
    let mut amps = state.amplitudes().to_vec();
    fwht_unnormalized(&mut amps);
    let scale = (state.dim() as f64).sqrt().recip();
    amps.iter_mut().for_each(|a| *a *= scale);
    RegisterState::from_parts(state.n(), amps)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Dense `H^{⊗n}` entry: `(-1)^{popcount(i & j)} / sqrt(N)`.
    fn dense_hadamard(amps: &[Complex64]) -> Vec<Complex64> {
        let dim = amps.len();
        let scale = (dim as f64).sqrt().recip();
        (0..dim)
            .map(|i| {
                amps.iter()
                    .enumerate()
                    .map(|(j, a)| {
                        let sign = if (i & j).count_ones() % 2 == 0 {
                            1.0
                        } else {
                            -1.0
                        };
                        a * sign * scale
                    })
                    .sum()
            })
            .collect()
    }

    #[test]
    fn matches_dense_matrix() {
        for n in 1..=6 {
            let dim = 1usize << n;
            let raw: Vec<Complex64> = (0..dim)
                .map(|i| Complex64::new((i as f64).sin(), (2.0 * i as f64).cos()))
                .collect();
            let state = RegisterState::normalized(raw).unwrap();
            let fast = hadamard_all(&state);
            let dense = dense_hadamard(state.amplitudes());
            for (a, b) in fast.amplitudes().iter().zip(&dense) {
                assert!((a - b).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn is_an_involution() {
        let state = RegisterState::normalized(
            (0..32)
                .map(|i| Complex64::new(i as f64, -(i as f64) * 0.5))
                .collect(),
        )
        .unwrap();
        let back = hadamard_all(&hadamard_all(&state));
        for (a, b) in back.amplitudes().iter().zip(state.amplitudes()) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn maps_zero_to_uniform() {
        let zero = RegisterState::basis(4, 0).unwrap();
        let eta = hadamard_all(&zero);
        assert!(eta.amplitudes().iter().all(|a| (a.re - 0.25).abs() < 1e-15));
    }
}
