//! Rewriting balanced words into degree-`K` block generators.
//!
//! A word in the balanced set (grading degree `0` mod `K`) can be expanded,
//! using only insertions of `Σ_a z_a z_a^* = 1` and `Σ_a z_a^* z_a = 1`,
//! into a sum of products of block generators `r_{i_1…i_K} = z_{i_1}…z_{i_K}`
//! and their adjoints. Since only the normalization relations are used, the
//! expansion evaluates equal to the input word under every sphere model,
//! which is how the tests check it.

use std::collections::BTreeMap;

use num_complex::Complex64;
use thiserror::Error;

use super::{delta_membership, Generator, Letter, Polynomial, Word};

/// Default cap on the number of terms produced by [`rewrite_to_blocks`].
pub const DEFAULT_TERM_BUDGET: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RewriteError {
    #[error("word is not balanced mod K={0}")]
    NotBalanced(u32),
    #[error("word uses generator index {index} beyond ambient dimension {n}")]
    IndexOutOfRange { index: u32, n: u32 },
    #[error("only sphere coordinates can be rewritten into blocks")]
    NotSphereWord,
    #[error("term budget of {0} terms exceeded")]
    TermBudget(usize),
}

/// One block generator factor: `r_{i_1…i_K}` or its adjoint.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlockFactor {
    pub indices: Vec<u32>,
    pub starred: bool,
}

impl BlockFactor {
    /// Expand back to letters: `r_t = z_{t_1}…z_{t_K}`, and the adjoint
    /// reverses with stars.
    pub fn to_word(&self) -> Word {
        if self.starred {
            Word::new(
                self.indices
                    .iter()
                    .rev()
                    .map(|&i| Letter::z_star(i))
                    .collect(),
            )
        } else {
            Word::new(self.indices.iter().map(|&i| Letter::z(i)).collect())
        }
    }
}

impl std::fmt::Display for BlockFactor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "r")?;
        if self.starred {
            write!(f, "*")?;
        }
        write!(f, "(")?;
        for (pos, i) in self.indices.iter().enumerate() {
            if pos > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i)?;
        }
        write!(f, ")")
    }
}

/// A product of block factors.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlockWord {
    pub factors: Vec<BlockFactor>,
}

impl BlockWord {
    pub fn to_word(&self) -> Word {
        let mut letters = Vec::new();
        for f in &self.factors {
            letters.extend(f.to_word().letters);
        }
        Word::new(letters)
    }
}

impl std::fmt::Display for BlockWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (pos, b) in self.factors.iter().enumerate() {
            if pos > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", b)?;
        }
        Ok(())
    }
}

/// A complex-linear combination of block words.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct BlockPolynomial {
    pub k: u32,
    terms: BTreeMap<BlockWord, Complex64>,
}

impl BlockPolynomial {
    pub fn terms(&self) -> impl Iterator<Item = (&BlockWord, &Complex64)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Expand every block factor back to letters.
    pub fn to_polynomial(&self) -> Polynomial {
        let mut p = Polynomial::zero();
        for (bw, c) in &self.terms {
            p.add_term(bw.to_word(), *c);
        }
        p
    }
}

impl std::fmt::Display for BlockPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            if *c == Complex64::new(1.0, 0.0) {
                write!(f, "{}", w)?;
            } else {
                write!(f, "({},{}) {}", c.re, c.im, w)?;
            }
            first = false;
        }
        Ok(())
    }
}

struct Rewriter {
    n: u32,
    k: usize,
    budget: usize,
}

type Terms = Vec<(Vec<BlockFactor>, Complex64)>;

impl Rewriter {
    fn check(&self, terms: &Terms) -> Result<(), RewriteError> {
        if terms.len() > self.budget {
            Err(RewriteError::TermBudget(self.budget))
        } else {
            Ok(())
        }
    }

    fn all_tuples(&self, len: usize) -> Vec<Vec<u32>> {
        super::index_tuples(self.n, len)
    }

    /// Expand `z_{i_1}…z_{i_t} z_{j_1}^*…z_{j_t}^*` (`t < K`) directly:
    /// insert unstarred/starred index pairs in the middle until both sides
    /// reach length `K`.
    fn head_unstar_star(&self, is: &[u32], js: &[u32]) -> Terms {
        let t = is.len();
        let mut out = Vec::new();
        for a in self.all_tuples(self.k - t) {
            let mut left = is.to_vec();
            left.extend_from_slice(&a);
            let mut right: Vec<u32> = js.iter().rev().copied().collect();
            right.extend_from_slice(&a);
            out.push((
                vec![
                    BlockFactor {
                        indices: left,
                        starred: false,
                    },
                    BlockFactor {
                        indices: right,
                        starred: true,
                    },
                ],
                Complex64::new(1.0, 0.0),
            ));
        }
        out
    }

    /// Mirror case: `z_{i_1}^*…z_{i_t}^* z_{j_1}…z_{j_t}` (`t < K`).
    fn head_star_unstar(&self, is: &[u32], js: &[u32]) -> Terms {
        let t = is.len();
        let mut out = Vec::new();
        for a in self.all_tuples(self.k - t) {
            let mut left: Vec<u32> = a.iter().rev().copied().collect();
            left.extend(is.iter().rev().copied());
            let mut right: Vec<u32> = a.iter().rev().copied().collect();
            right.extend_from_slice(js);
            out.push((
                vec![
                    BlockFactor {
                        indices: left,
                        starred: true,
                    },
                    BlockFactor {
                        indices: right,
                        starred: false,
                    },
                ],
                Complex64::new(1.0, 0.0),
            ));
        }
        out
    }

    fn rewrite(&self, w: &[Letter]) -> Result<Terms, RewriteError> {
        if w.is_empty() {
            return Ok(vec![(vec![], Complex64::new(1.0, 0.0))]);
        }
        let k = self.k;
        // whole first block unstarred / starred
        if w.len() >= k && w[..k].iter().all(|l| !l.starred) {
            let factor = BlockFactor {
                indices: w[..k].iter().map(sphere_index).collect(),
                starred: false,
            };
            return self.prepend(vec![factor], &w[k..], Complex64::new(1.0, 0.0));
        }
        if w.len() >= k && w[..k].iter().all(|l| l.starred) {
            // z_{i_1}^*…z_{i_K}^* = (z_{i_K}…z_{i_1})^*
            let factor = BlockFactor {
                indices: w[..k].iter().rev().map(sphere_index).collect(),
                starred: true,
            };
            return self.prepend(vec![factor], &w[k..], Complex64::new(1.0, 0.0));
        }
        // initial run of constant star, length t in [1, K)
        let starred0 = w[0].starred;
        let t = w.iter().take_while(|l| l.starred == starred0).count();
        debug_assert!(t < k && t < w.len());
        let run: Vec<u32> = w[..t].iter().map(sphere_index).collect();
        let pivot = sphere_index(&w[t]);
        let tail = &w[t + 1..];

        // exact two-sided shape: run, then t letters of the opposite star
        if w.len() == 2 * t && w[t..].iter().all(|l| l.starred != starred0) {
            let other: Vec<u32> = w[t..].iter().map(sphere_index).collect();
            let heads = if starred0 {
                self.head_star_unstar(&run, &other)
            } else {
                self.head_unstar_star(&run, &other)
            };
            self.check(&heads)?;
            return Ok(heads);
        }

        // general step: pad the pivot letter into a length-t opposite run
        // with t-1 inserted indices, expand the two-sided head, recurse on
        // the remainder.
        let mut out: Terms = Vec::new();
        for alpha in self.all_tuples(t - 1) {
            // head second tuple: pivot padded by alpha (reversed for the
            // mirror case), remainder gets the matching unstarred copies
            let (heads, rest_prefix): (Terms, Vec<Letter>) = if !starred0 {
                // run unstarred, pivot starred:
                //   head = z_run z_pivot^* z_{α_{t+1}}^* … z_{α_3}^*
                //   rest = z_{α_3} … z_{α_{t+1}} tail
                let mut d = vec![pivot];
                d.extend(alpha.iter().rev().copied()); // (pivot, α_{t+1}, …, α_3)
                let heads = self.head_unstar_star(&run, &d);
                let rest: Vec<Letter> = alpha.iter().map(|&i| Letter::z(i)).collect();
                (heads, rest)
            } else {
                // run starred, pivot unstarred: mirror with starred inserts
                let mut d = vec![pivot];
                d.extend(alpha.iter().rev().copied());
                let heads = self.head_star_unstar(&run, &d);
                let rest: Vec<Letter> = alpha.iter().map(|&i| Letter::z_star(i)).collect();
                (heads, rest)
            };
            let mut rest_word = rest_prefix;
            rest_word.extend_from_slice(tail);
            let tail_terms = self.rewrite(&rest_word)?;
            for (hw, hc) in &heads {
                for (tw, tc) in &tail_terms {
                    let mut factors = hw.clone();
                    factors.extend(tw.iter().cloned());
                    out.push((factors, hc * tc));
                }
                self.check(&out)?;
            }
        }
        Ok(out)
    }

    fn prepend(
        &self,
        prefix: Vec<BlockFactor>,
        rest: &[Letter],
        coeff: Complex64,
    ) -> Result<Terms, RewriteError> {
        let tail = self.rewrite(rest)?;
        let mut out = Vec::with_capacity(tail.len());
        for (tw, tc) in tail {
            let mut factors = prefix.clone();
            factors.extend(tw);
            out.push((factors, coeff * tc));
        }
        self.check(&out)?;
        Ok(out)
    }
}

fn sphere_index(l: &Letter) -> u32 {
    match l.generator {
        Generator::Sphere(i) => i,
        Generator::Entry(_, _) => unreachable!("checked before rewriting"),
    }
}

/// Rewrite a balanced word as a combination of degree-`K` blocks and their
/// adjoints, equal to the input modulo the sphere normalization relations.
pub fn rewrite_to_blocks(
    w: &Word,
    n: u32,
    k: u32,
    term_budget: usize,
) -> Result<BlockPolynomial, RewriteError> {
    if !delta_membership(w, k) {
        return Err(RewriteError::NotBalanced(k));
    }
    for l in &w.letters {
        match l.generator {
            Generator::Sphere(i) => {
                if i == 0 || i > n {
                    return Err(RewriteError::IndexOutOfRange { index: i, n });
                }
            }
            Generator::Entry(_, _) => return Err(RewriteError::NotSphereWord),
        }
    }
    let rewriter = Rewriter {
        n,
        k: k as usize,
        budget: term_budget,
    };
    let terms = rewriter.rewrite(&w.letters)?;
    let mut map = BTreeMap::new();
    for (factors, c) in terms {
        let bw = BlockWord { factors };
        *map.entry(bw).or_insert(Complex64::new(0.0, 0.0)) += c;
    }
    map.retain(|_, c| *c != Complex64::new(0.0, 0.0));
    Ok(BlockPolynomial { k, terms: map })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_word_is_unit() {
        let p = rewrite_to_blocks(&Word::unit(), 2, 3, 100).unwrap();
        assert_eq!(p.num_terms(), 1);
        let (bw, c) = p.terms().next().unwrap();
        assert!(bw.factors.is_empty());
        assert_eq!(*c, Complex64::new(1.0, 0.0));
    }

    #[test]
    fn single_block_stays_a_block() {
        let w = Word::new(vec![Letter::z(1), Letter::z(2)]);
        let p = rewrite_to_blocks(&w, 2, 2, 100).unwrap();
        assert_eq!(p.num_terms(), 1);
        let (bw, _) = p.terms().next().unwrap();
        assert_eq!(
            bw.factors,
            vec![BlockFactor {
                indices: vec![1, 2],
                starred: false
            }]
        );
        assert_eq!(bw.to_word(), w);
    }

    #[test]
    fn pair_expands_with_normalization_insertion() {
        // z1 z1^* at K=2, N=2 -> r(1,1) r*(1,1) + r(1,2) r*(1,2)
        let w = Word::new(vec![Letter::z(1), Letter::z_star(1)]);
        let p = rewrite_to_blocks(&w, 2, 2, 100).unwrap();
        assert_eq!(p.num_terms(), 2);
        let expect = |a: u32| BlockWord {
            factors: vec![
                BlockFactor {
                    indices: vec![1, a],
                    starred: false,
                },
                BlockFactor {
                    indices: vec![1, a],
                    starred: true,
                },
            ],
        };
        for a in [1u32, 2] {
            let c = p
                .terms()
                .find(|(bw, _)| **bw == expect(a))
                .map(|(_, c)| *c);
            assert_eq!(c, Some(Complex64::new(1.0, 0.0)));
        }
    }

    #[test]
    fn not_balanced_is_rejected() {
        let w = Word::new(vec![Letter::z(1)]);
        assert_eq!(
            rewrite_to_blocks(&w, 2, 2, 100),
            Err(RewriteError::NotBalanced(2))
        );
    }

    #[test]
    fn tiny_budget_is_enforced() {
        let w = Word::new(vec![
            Letter::z(1),
            Letter::z_star(1),
            Letter::z(2),
            Letter::z_star(2),
        ]);
        assert_eq!(
            rewrite_to_blocks(&w, 2, 3, 3),
            Err(RewriteError::TermBudget(3))
        );
    }

    #[test]
    fn index_bounds_are_checked() {
        let w = Word::new(vec![Letter::z(3), Letter::z_star(3)]);
        assert!(matches!(
            rewrite_to_blocks(&w, 2, 2, 100),
            Err(RewriteError::IndexOutOfRange { index: 3, n: 2 })
        ));
    }

    #[test]
    fn block_words_expand_consistently() {
        let f = BlockFactor {
            indices: vec![1, 2, 3],
            starred: true,
        };
        // r*(1,2,3) = (z1 z2 z3)^* = z3^* z2^* z1^*
        assert_eq!(
            f.to_word(),
            Word::new(vec![Letter::z_star(3), Letter::z_star(2), Letter::z_star(1)])
        );
        assert_eq!(f.to_string(), "r*(1,2,3)");
    }

    #[test]
    fn grade_zero_words_of_mixed_shape_rewrite() {
        // star-leading word, exercises the mirror cases
        let w = Word::new(vec![
            Letter::z_star(2),
            Letter::z(1),
            Letter::z_star(1),
            Letter::z(2),
        ]);
        let p = rewrite_to_blocks(&w, 2, 2, 10_000).unwrap();
        assert!(p.num_terms() > 0);
        // every term is a product of full blocks
        for (bw, _) in p.terms() {
            for f in &bw.factors {
                assert_eq!(f.indices.len(), 2);
            }
        }
    }
}
