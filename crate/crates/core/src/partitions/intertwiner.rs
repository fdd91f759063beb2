//! Intertwiner residuals of partition realizations against the models.
//!
//! For a tuple `g` of unitaries, the coordinate matrix `u` evaluates
//! entrywise to `K x K` cyclic band matrices; a row of colors `ε` assembles
//! the `N^k·K`-dimensional matrix `Û_ε(g)` whose `(i, j)` block is the
//! model evaluation of `u_{i_1 j_1}^{ε_1} … u_{i_k j_k}^{ε_k}` (white
//! factors unstarred, black factors starred). A partition `p` intertwines
//! when `(T_p ⊗ 1_K) Û_upper(g) = Û_lower(g) (T_p ⊗ 1_K)` at every sample;
//! the residual is the largest operator norm of the difference.
//!
//! Every block of `Û_ε(g)` lives on the same cyclic band (the color charge
//! mod `K`), so when the two rows carry equal charge the difference splits
//! into `K` dense slices and the operator norm is the largest slice norm.

use num_complex::Complex64;

use crate::model::{identity, kronecker, operator_norm, CMatrix, UnitaryTuple};

use super::{t_map, Color, ColoredPartition, PartitionError};

/// Default cap on the entry count of an assembled representation matrix.
pub const DEFAULT_REP_CAP: usize = 16_000_000;

/// Assemble `Û_ε(g)` for a row of colors: size `N^len(ε) * K`, row index
/// `(multi-index) * K + c`.
pub fn rep_tensor_power(g: &UnitaryTuple, colors: &[Color]) -> CMatrix {
    let n = g.n();
    let k = g.k();
    let mut acc = identity(k);
    for &color in colors {
        let dim = acc.nrows() / k; // N^s
        let next_dim = dim * n;
        let mut next = CMatrix::zeros(next_dim * k, next_dim * k);
        // letter blocks: white = model matrix of u_ab, black = of u_ab^*
        let mut letter = vec![CMatrix::zeros(k, k); n * n];
        for a in 0..n {
            for b in 0..n {
                let m = &mut letter[a * n + b];
                for c in 0..k {
                    match color {
                        Color::White => m[(c, (c + 1) % k)] = g.unitaries()[c][(a, b)],
                        Color::Black => m[((c + 1) % k, c)] = g.unitaries()[c][(a, b)].conj(),
                    }
                }
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                for a in 0..n {
                    for b in 0..n {
                        let lm = &letter[a * n + b];
                        for c in 0..k {
                            for cp in 0..k {
                                let mut sum = Complex64::new(0.0, 0.0);
                                for m in 0..k {
                                    sum += acc[(i * k + c, j * k + m)] * lm[(m, cp)];
                                }
                                next[((i * n + a) * k + c, (j * n + b) * k + cp)] = sum;
                            }
                        }
                    }
                }
            }
        }
        acc = next;
    }
    acc
}

fn charge_mod(colors: &[Color], k: usize) -> usize {
    let s: i64 = colors
        .iter()
        .map(|c| match c {
            Color::White => 1i64,
            Color::Black => -1,
        })
        .sum();
    s.rem_euclid(k as i64) as usize
}

/// Maximum operator-norm residual of the intertwiner identity over the
/// supplied samples.
pub fn intertwiner_residual(
    p: &ColoredPartition,
    samples: &[UnitaryTuple],
    size_cap: usize,
) -> Result<f64, PartitionError> {
    let mut worst = 0.0f64;
    for g in samples {
        let n = g.n() as u32;
        let k = g.k();
        let rows = (g.n().pow(p.l() as u32)) * k;
        let cols = (g.n().pow(p.k() as u32)) * k;
        let needed = rows.max(cols) * rows.max(cols);
        if needed > size_cap {
            return Err(PartitionError::SizeCap {
                needed,
                cap: size_cap,
            });
        }
        let t = t_map(p, n, size_cap)?;
        let t_ext = kronecker(&t, &identity(k));
        let up = rep_tensor_power(g, p.upper_colors());
        let low = rep_tensor_power(g, p.lower_colors());
        let diff = &t_ext * up - low * t_ext;
        let b_up = charge_mod(p.upper_colors(), k);
        let b_low = charge_mod(p.lower_colors(), k);
        let res = if b_up == b_low {
            // both sides live on one cyclic band: the difference is a direct
            // sum of K dense slices
            let band = b_up;
            let (nr, nc) = (diff.nrows() / k, diff.ncols() / k);
            let mut slice_worst = 0.0f64;
            for c in 0..k {
                let s = CMatrix::from_fn(nr, nc, |j, i| diff[(j * k + c, i * k + (c + band) % k)]);
                slice_worst = slice_worst.max(operator_norm(&s));
            }
            slice_worst
        } else {
            operator_norm(&diff)
        };
        worst = worst.max(res);
    }
    Ok(worst)
}

/// Reference evaluation of one block of `Û_ε(g)` as a word, for tests.
#[cfg(test)]
pub(crate) fn block_word(
    colors: &[Color],
    upper_idx: &[u32],
    lower_idx: &[u32],
) -> crate::ncalg::Word {
    use crate::ncalg::{Letter, Word};
    let letters: Vec<Letter> = colors
        .iter()
        .zip(upper_idx.iter().zip(lower_idx))
        .map(|(c, (&i, &j))| match c {
            Color::White => Letter::u(i, j),
            Color::Black => Letter::u_star(i, j),
        })
        .collect();
    Word::new(letters)
}

/// First generator diagram of the limit quantum group: colors
/// `∘••∘ / •∘∘•`, upper leg `a` joined to lower leg `a+2 mod 4`.
pub fn u_inf_generator_one() -> ColoredPartition {
    half_swap(
        2,
        vec![Color::White, Color::Black, Color::Black, Color::White],
        vec![Color::Black, Color::White, Color::White, Color::Black],
    )
}

/// Second generator diagram: colors `∘•∘• / ∘•∘•`, same crossing.
pub fn u_inf_generator_two() -> ColoredPartition {
    half_swap(
        2,
        vec![Color::White, Color::Black, Color::White, Color::Black],
        vec![Color::White, Color::Black, Color::White, Color::Black],
    )
}

/// The all-white `2K`-crossing in `P(2K, 2K)`: upper leg `a` joined to
/// lower leg `a+K mod 2K`.
pub fn unk_crossing(k: u32) -> ColoredPartition {
    let m = k as usize;
    half_swap(m, vec![Color::White; 2 * m], vec![Color::White; 2 * m])
}

/// The all-white pair in `P(0, 2)`.
pub fn white_cup() -> ColoredPartition {
    ColoredPartition::from_blocks(vec![], vec![Color::White, Color::White], &[vec![0, 1]])
        .expect("static block data")
}

fn half_swap(m: usize, upper: Vec<Color>, lower: Vec<Color>) -> ColoredPartition {
    let legs = 2 * m;
    let blocks: Vec<Vec<usize>> = (0..legs)
        .map(|a| vec![a, legs + (a + m) % legs])
        .collect();
    ColoredPartition::from_blocks(upper, lower, &blocks).expect("static block data")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{qg_eval, sample_haar_unitary, substream, Point, Sampler};
    use crate::model::{fro_norm, HaarUnitarySampler};

    fn haar_tuple(n: u32, k: u32, seed: u64, index: u64) -> UnitaryTuple {
        match (HaarUnitarySampler { n, k }).sample_indexed(seed, index).unwrap() {
            Point::Unitaries(g) => g,
            _ => unreachable!(),
        }
    }

    #[test]
    fn rep_power_blocks_are_word_evaluations() {
        let g = haar_tuple(2, 3, 5, 0);
        let colors = [Color::White, Color::Black];
        let m = rep_tensor_power(&g, &colors);
        let (n, k) = (2u32, 3usize);
        for i1 in 1..=n {
            for i2 in 1..=n {
                for j1 in 1..=n {
                    for j2 in 1..=n {
                        let w = block_word(&colors, &[i1, i2], &[j1, j2]);
                        let direct = qg_eval(&w, &g).unwrap();
                        let row_base = (((i1 - 1) * n + (i2 - 1)) as usize) * k;
                        let col_base = (((j1 - 1) * n + (j2 - 1)) as usize) * k;
                        for c in 0..k {
                            for cp in 0..k {
                                let got = m[(row_base + c, col_base + cp)];
                                let want = direct[(c, cp)];
                                assert!((got - want).norm() < 1e-13);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn colored_identity_intertwines_exactly() {
        let g = haar_tuple(2, 2, 6, 0);
        for color in [Color::White, Color::Black] {
            let id = ColoredPartition::identity(color);
            let res = intertwiner_residual(&id, &[g.clone()], DEFAULT_REP_CAP).unwrap();
            assert_eq!(res, 0.0);
        }
    }

    #[test]
    fn crossing_intertwines_the_model_it_presents() {
        for k in [2u32, 3] {
            let p = unk_crossing(k);
            let samples: Vec<UnitaryTuple> =
                (0..4).map(|i| haar_tuple(2, k, 11, i)).collect();
            let res = intertwiner_residual(&p, &samples, DEFAULT_REP_CAP).unwrap();
            assert!(res < 1e-9, "K={k}: residual {res}");
        }
    }

    #[test]
    fn limit_generators_intertwine_the_finite_models() {
        for k in [2u32, 3] {
            let samples: Vec<UnitaryTuple> =
                (0..4).map(|i| haar_tuple(2, k, 13, i)).collect();
            for p in [u_inf_generator_one(), u_inf_generator_two()] {
                let res = intertwiner_residual(&p, &samples, DEFAULT_REP_CAP).unwrap();
                assert!(res < 1e-9, "K={k}: residual {res}");
            }
        }
    }

    #[test]
    fn white_cup_fails_against_classical_haar() {
        // K = 1 is the classical group; white-white pairing does not match
        let mut rng = substream(17, 0);
        let samples: Vec<UnitaryTuple> = (0..8)
            .map(|_| UnitaryTuple::new(vec![sample_haar_unitary(2, &mut rng)]).unwrap())
            .collect();
        let res = intertwiner_residual(&white_cup(), &samples, DEFAULT_REP_CAP).unwrap();
        assert!(res > 0.1, "residual {res}");
    }

    #[test]
    fn fundamental_assembly_matches_rep_power_of_one_white_leg() {
        let g = haar_tuple(3, 2, 19, 0);
        let via_rep = rep_tensor_power(&g, &[Color::White]);
        let via_fund = crate::model::assemble_fundamental(&g);
        assert!(fro_norm(&(via_rep - via_fund)) < 1e-14);
    }
}
