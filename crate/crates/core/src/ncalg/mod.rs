//! Free `*`-polynomial algebra over sphere or quantum-group coordinates.
//!
//! Words are finite sequences of letters `z_i`, `z_i^*` (sphere coordinates,
//! index in `[1, N]`) or `u_{ij}`, `u_{ij}^*` (quantum-group coordinates);
//! the empty word is the unit. Polynomials are finite complex-linear
//! combinations of words, stored with lexicographically ordered terms, so
//! that printing and reports are deterministic. Symbols do not carry the
//! ambient dimension; index bounds are checked where a dimension is known
//! (relation presets, model evaluation).

mod blocks;
mod relations;
mod text;

pub use blocks::{
    rewrite_to_blocks, BlockFactor, BlockPolynomial, BlockWord, RewriteError, DEFAULT_TERM_BUDGET,
};
pub use relations::{relation_preset, PresetError, RelationSet, SpaceId};
pub use text::{parse_polynomial, parse_word, ParseError};

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

/// A generator symbol: a sphere coordinate or a matrix-entry coordinate.
/// Indices are 1-based, matching the usual notation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    Sphere(u32),
    Entry(u32, u32),
}

/// One letter of a word: a generator, possibly starred.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub generator: Generator,
    pub starred: bool,
}

impl Letter {
    pub fn z(i: u32) -> Self {
        Letter {
            generator: Generator::Sphere(i),
            starred: false,
        }
    }

    pub fn z_star(i: u32) -> Self {
        Letter {
            generator: Generator::Sphere(i),
            starred: true,
        }
    }

    pub fn u(i: u32, j: u32) -> Self {
        Letter {
            generator: Generator::Entry(i, j),
            starred: false,
        }
    }

    pub fn u_star(i: u32, j: u32) -> Self {
        Letter {
            generator: Generator::Entry(i, j),
            starred: true,
        }
    }

    pub fn adjoint(self) -> Self {
        Letter {
            generator: self.generator,
            starred: !self.starred,
        }
    }
}

/// A `*`-monomial: an ordered sequence of letters. Empty means the unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    pub letters: Vec<Letter>,
}

impl Word {
    pub fn unit() -> Self {
        Word { letters: vec![] }
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Letters reversed, stars toggled.
    pub fn adjoint(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.adjoint()).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// Largest sphere index or matrix index appearing, if any.
    pub fn max_index(&self) -> u32 {
        self.letters
            .iter()
            .map(|l| match l.generator {
                Generator::Sphere(i) => i,
                Generator::Entry(i, j) => i.max(j),
            })
            .max()
            .unwrap_or(0)
    }
}

/// Exponent of the root-of-unity action `ω·z_i = ω z_i` on a word:
/// (#unstarred − #starred) mod K.
pub fn grading_degree(w: &Word, k: u32) -> u32 {
    assert!(k >= 1, "grading needs K >= 1");
    let s: i64 = w
        .letters
        .iter()
        .map(|l| if l.starred { -1i64 } else { 1 })
        .sum();
    s.rem_euclid(k as i64) as u32
}

/// Membership in the balanced set: grading degree zero mod K.
pub fn delta_membership(w: &Word, k: u32) -> bool {
    grading_degree(w, k) == 0
}

/// A finite complex-linear combination of words. No zero coefficients are
/// stored and terms are kept in lexicographic word order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Polynomial {
    terms: BTreeMap<Word, Complex64>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Polynomial::from_word(Word::unit())
    }

    pub fn from_word(w: Word) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(w, Complex64::new(1.0, 0.0));
        p
    }

    pub fn from_letters(letters: &[Letter]) -> Self {
        Polynomial::from_word(Word::new(letters.to_vec()))
    }

    pub fn term(w: Word, c: Complex64) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(w, c);
        p
    }

    pub fn add_term(&mut self, w: Word, c: Complex64) {
        if c == Complex64::new(0.0, 0.0) {
            return;
        }
        let entry = self.terms.entry(w);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = *o.get() + c;
                if sum == Complex64::new(0.0, 0.0) {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Complex64)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> Complex64 {
        self.terms
            .get(w)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn scale(&self, c: Complex64) -> Polynomial {
        let mut p = Polynomial::zero();
        for (w, a) in &self.terms {
            p.add_term(w.clone(), *a * c);
        }
        p
    }

    /// The `*` of the algebra: words reversed with stars toggled,
    /// coefficients conjugated.
    pub fn adjoint(&self) -> Polynomial {
        let mut p = Polynomial::zero();
        for (w, c) in &self.terms {
            p.add_term(w.adjoint(), c.conj());
        }
        p
    }

    /// Bilinear concatenation product.
    pub fn multiply(&self, other: &Polynomial) -> Polynomial {
        let mut p = Polynomial::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                p.add_term(w1.concat(w2), c1 * c2);
            }
        }
        p
    }

    /// Retain the terms whose words have grading degree `j` mod `k`.
    pub fn grade_project(&self, k: u32, j: u32) -> Polynomial {
        assert!(j < k, "grade_project needs 0 <= j < K");
        let mut p = Polynomial::zero();
        for (w, c) in &self.terms {
            if grading_degree(w, k) == j {
                p.add_term(w.clone(), *c);
            }
        }
        p
    }

    pub fn max_index(&self) -> u32 {
        self.terms.keys().map(|w| w.max_index()).max().unwrap_or(0)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut p = self.clone();
        for (w, c) in &rhs.terms {
            p.add_term(w.clone(), *c);
        }
        p
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut p = self.clone();
        for (w, c) in &rhs.terms {
            p.add_term(w.clone(), -*c);
        }
        p
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.multiply(rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

/// `pq - qp`.
pub fn commutator(p: &Polynomial, q: &Polynomial) -> Polynomial {
    &p.multiply(q) - &q.multiply(p)
}

/// The endomorphism `a ↦ Σ_{i=1}^N z_i a z_i^*`, purely symbolic.
pub fn gamma(p: &Polynomial, n: u32) -> Polynomial {
    let mut out = Polynomial::zero();
    for i in 1..=n {
        for (w, c) in &p.terms {
            let mut letters = Vec::with_capacity(w.len() + 2);
            letters.push(Letter::z(i));
            letters.extend_from_slice(&w.letters);
            letters.push(Letter::z_star(i));
            out.add_term(Word::new(letters), *c);
        }
    }
    out
}

/// The alternating sum `Σ_σ sign(σ) w_{σ(1)} … w_{σ(m)}` over all
/// permutations of the input words.
pub fn standard_identity_instance(words: &[Word]) -> Polynomial {
    let m = words.len();
    let mut acc = Polynomial::zero();
    let mut idx: Vec<usize> = (0..m).collect();
    let mut sign = 1.0f64;
    let push = |acc: &mut Polynomial, idx: &[usize], sign: f64| {
        let mut letters = Vec::new();
        for &i in idx {
            letters.extend_from_slice(&words[i].letters);
        }
        acc.add_term(Word::new(letters), Complex64::new(sign, 0.0));
    };
    push(&mut acc, &idx, sign);
    // Heap's algorithm; every swap is a transposition, so the sign flips.
    let mut c = vec![0usize; m];
    let mut i = 0;
    while i < m {
        if c[i] < i {
            if i % 2 == 0 {
                idx.swap(0, i);
            } else {
                idx.swap(c[i], i);
            }
            sign = -sign;
            push(&mut acc, &idx, sign);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    acc
}

/// All tuples in `[1, n]^len`, lexicographic.
pub(crate) fn index_tuples(n: u32, len: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::with_capacity((n as usize).pow(len as u32));
    let mut cur = vec![1u32; len];
    loop {
        out.push(cur.clone());
        let mut pos = len;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if cur[pos] < n {
                cur[pos] += 1;
                for x in cur.iter_mut().skip(pos + 1) {
                    *x = 1;
                }
                break;
            }
        }
    }
}
