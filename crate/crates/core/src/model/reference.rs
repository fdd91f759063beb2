//! Slow reference evaluation used to cross-check the band representation.
//!
//! Letters are expanded to full dense `K x K` matrices and words are
//! evaluated by plain left-to-right dense products. This path shares no
//! code with the band evaluator.

use num_complex::Complex64;

use crate::ncalg::{Generator, Letter, Polynomial, Word};

use super::linalg::CMatrix;
use super::{ModelError, Point};

fn dense_letter(l: &Letter, p: &Point) -> Result<CMatrix, ModelError> {
    let k = p.k();
    let mut m = CMatrix::zeros(k, k);
    for c in 0..k {
        let v = match (l.generator, p) {
            (Generator::Sphere(i), Point::Sphere(x)) => {
                if i == 0 || i as usize > x.n() {
                    return Err(ModelError::DimensionMismatch(format!(
                        "letter z{i} outside ambient dimension {}",
                        x.n()
                    )));
                }
                x.coordinate(c, i)
            }
            (Generator::Entry(i, j), Point::Unitaries(g)) => {
                if i == 0 || j == 0 || i as usize > g.n() || j as usize > g.n() {
                    return Err(ModelError::DimensionMismatch(format!(
                        "letter u{i},{j} outside ambient dimension {}",
                        g.n()
                    )));
                }
                g.entry(c, i, j)
            }
            _ => return Err(ModelError::LetterKind("mixed letter kinds".into())),
        };
        m[(c, (c + 1) % k)] = v;
    }
    Ok(if l.starred { m.adjoint() } else { m })
}

/// Dense word evaluation.
pub fn dense_eval_word(w: &Word, p: &Point) -> Result<CMatrix, ModelError> {
    let k = p.k();
    let mut acc = CMatrix::identity(k, k);
    for l in &w.letters {
        acc = acc * dense_letter(l, p)?;
    }
    Ok(acc)
}

/// Dense polynomial evaluation.
pub fn dense_eval_poly(p: &Polynomial, pt: &Point) -> Result<CMatrix, ModelError> {
    let k = pt.k();
    let mut acc = CMatrix::zeros(k, k);
    for (w, c) in p.terms() {
        let m = dense_eval_word(w, pt)?;
        acc += m * Complex64::new(c.re, c.im);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::sample::{Sampler, SphereProductSampler};
    use crate::model::{eval_word_at, fro_norm};
    use crate::ncalg::Letter;

    #[test]
    fn band_and_dense_paths_agree_on_random_words() {
        use rand::Rng;
        let sampler = SphereProductSampler { n: 3, k: 4 };
        for i in 0..20 {
            let point = sampler.sample_indexed(2024, i).unwrap();
            let mut rng = crate::model::substream(55, i);
            let len = rng.random_range(0..8);
            let letters: Vec<Letter> = (0..len)
                .map(|_| {
                    let idx = rng.random_range(1..=3u32);
                    if rng.random::<bool>() {
                        Letter::z_star(idx)
                    } else {
                        Letter::z(idx)
                    }
                })
                .collect();
            let w = Word::new(letters);
            let fast = eval_word_at(&w, &point).unwrap();
            let slow = dense_eval_word(&w, &point).unwrap();
            assert!(fro_norm(&(fast - slow)) < 1e-12, "word {w}");
        }
    }
}
