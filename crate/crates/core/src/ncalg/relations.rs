//! Relation presets for the sphere and quantum-group families.
//!
//! Every sphere preset carries the two normalization relations
//! `Σ_i z_i z_i^* - 1` and `Σ_i z_i^* z_i - 1`; quantum-group presets carry
//! the biunitarity relations. On top of those:
//!
//! * `classical_sphere` — all coordinates commute with each other and with
//!   adjoints.
//! * `free_complex_sphere` — nothing further.
//! * `k_half_sphere` — length-`K` products of coordinates commute with each
//!   other and with adjoint length-`K` products.
//! * `star_half_sphere` — `z_i z_j^* z_k = z_k z_j^* z_i`.
//! * `double_star_half_sphere` — `abc = cba` for letters `a, b, c` drawn
//!   from coordinates and their adjoints.
//! * `strong_infinity_sphere` — the length-two mixed products
//!   `{z_i^* z_j, z_j z_i^*}` all commute (a finite family).
//! * `delta_infinity_sphere` — commutators of balanced words (equally many
//!   starred and unstarred letters), truncated at `word_length_bound`.
//! * `unk_quantum_group` — biunitarity plus commutation of length-`K`
//!   products of matrix entries.
//! * `u_infinity_quantum_group` — biunitarity plus commutation of the
//!   mixed length-two entry products (finite family).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{commutator, index_tuples, Letter, Polynomial, Word};

/// Identifier of a sphere or quantum-group presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceId {
    ClassicalSphere,
    FreeComplexSphere,
    KHalfSphere,
    StarHalfSphere,
    DoubleStarHalfSphere,
    StrongInfinitySphere,
    DeltaInfinitySphere,
    UnkQuantumGroup,
    UInfinityQuantumGroup,
}

impl SpaceId {
    pub const ALL: [SpaceId; 9] = [
        SpaceId::ClassicalSphere,
        SpaceId::FreeComplexSphere,
        SpaceId::KHalfSphere,
        SpaceId::StarHalfSphere,
        SpaceId::DoubleStarHalfSphere,
        SpaceId::StrongInfinitySphere,
        SpaceId::DeltaInfinitySphere,
        SpaceId::UnkQuantumGroup,
        SpaceId::UInfinityQuantumGroup,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SpaceId::ClassicalSphere => "classical_sphere",
            SpaceId::FreeComplexSphere => "free_complex_sphere",
            SpaceId::KHalfSphere => "k_half_sphere",
            SpaceId::StarHalfSphere => "star_half_sphere",
            SpaceId::DoubleStarHalfSphere => "double_star_half_sphere",
            SpaceId::StrongInfinitySphere => "strong_infinity_sphere",
            SpaceId::DeltaInfinitySphere => "delta_infinity_sphere",
            SpaceId::UnkQuantumGroup => "unk_quantum_group",
            SpaceId::UInfinityQuantumGroup => "u_infinity_quantum_group",
        }
    }

    pub fn is_quantum_group(&self) -> bool {
        matches!(
            self,
            SpaceId::UnkQuantumGroup | SpaceId::UInfinityQuantumGroup
        )
    }

    /// Whether the preset actually reads the `K` parameter.
    pub fn uses_k(&self) -> bool {
        matches!(self, SpaceId::KHalfSphere | SpaceId::UnkQuantumGroup)
    }
}

impl std::fmt::Display for SpaceId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for SpaceId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SpaceId::ALL
            .iter()
            .find(|id| id.as_str() == s)
            .copied()
            .ok_or_else(|| format!("unknown space id `{s}`"))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresetError {
    #[error("ambient dimension must satisfy N >= 1, got {0}")]
    InvalidDimension(u32),
    #[error("K must satisfy K >= 1, got {0}")]
    InvalidK(u32),
    #[error("word_length_bound {got} too small for this preset, need at least {needed}")]
    WordLengthBound { got: u32, needed: u32 },
}

/// A finite presentation: the defining relation polynomials of a space.
#[derive(Clone, Debug, PartialEq)]
pub struct RelationSet {
    pub space: SpaceId,
    pub n: u32,
    pub k: u32,
    /// Truncation length for the infinitely presented variants; recorded in
    /// every report.
    pub word_length_bound: u32,
    pub relations: Vec<Polynomial>,
}

impl RelationSet {
    /// Space descriptor used in reports; carries the truncation bound when
    /// the preset is truncated.
    pub fn descriptor(&self) -> String {
        if self.space == SpaceId::DeltaInfinitySphere {
            format!("{}[wlb={}]", self.space, self.word_length_bound)
        } else {
            self.space.to_string()
        }
    }
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

fn word_poly(letters: Vec<Letter>) -> Polynomial {
    Polynomial::from_word(Word::new(letters))
}

/// `Σ_i z_i z_i^* - 1` and `Σ_i z_i^* z_i - 1`.
fn sphere_normalizations(n: u32) -> Vec<Polynomial> {
    let mut first = Polynomial::zero();
    let mut second = Polynomial::zero();
    for i in 1..=n {
        first.add_term(Word::new(vec![Letter::z(i), Letter::z_star(i)]), one());
        second.add_term(Word::new(vec![Letter::z_star(i), Letter::z(i)]), one());
    }
    first.add_term(Word::unit(), -one());
    second.add_term(Word::unit(), -one());
    vec![first, second]
}

fn sphere_letters(n: u32) -> Vec<Letter> {
    let mut ls: Vec<Letter> = (1..=n).map(Letter::z).collect();
    ls.extend((1..=n).map(Letter::z_star));
    ls
}

/// Unstarred product word `z_{t_1} … z_{t_len}`.
fn block_word(tuple: &[u32]) -> Word {
    Word::new(tuple.iter().map(|&i| Letter::z(i)).collect())
}

fn entry_block_word(tuple: &[(u32, u32)]) -> Word {
    Word::new(tuple.iter().map(|&(i, j)| Letter::u(i, j)).collect())
}

/// All balanced words (as many starred as unstarred letters) of the given
/// length over sphere coordinates `1..=n`, lexicographic.
fn balanced_words(n: u32, len: usize) -> Vec<Word> {
    if len % 2 != 0 {
        return vec![];
    }
    let mut out = Vec::new();
    let letters = sphere_letters(n);
    let mut stack: Vec<(Vec<Letter>, i32)> = vec![(Vec::new(), 0)];
    while let Some((prefix, bal)) = stack.pop() {
        if prefix.len() == len {
            if bal == 0 {
                out.push(Word::new(prefix));
            }
            continue;
        }
        let remaining = (len - prefix.len()) as i32;
        // prune: balance must be reachable
        if bal.abs() > remaining {
            continue;
        }
        for l in letters.iter().rev() {
            let mut next = prefix.clone();
            next.push(*l);
            let nb = bal + if l.starred { -1 } else { 1 };
            stack.push((next, nb));
        }
    }
    out.sort();
    out
}

fn comm_of_words(a: &Word, b: &Word) -> Polynomial {
    commutator(&Polynomial::from_word(a.clone()), &Polynomial::from_word(b.clone()))
}

/// Build the defining relation set of a space.
///
/// `k` is ignored by the presets that do not depend on it;
/// `word_length_bound` truncates the balanced-word preset and must be at
/// least `2K` for `k_half_sphere` (the commutators have length `2K`).
pub fn relation_preset(
    space: SpaceId,
    n: u32,
    k: u32,
    word_length_bound: u32,
) -> Result<RelationSet, PresetError> {
    if n < 1 {
        return Err(PresetError::InvalidDimension(n));
    }
    if k < 1 {
        return Err(PresetError::InvalidK(k));
    }
    let mut relations = Vec::new();
    match space {
        SpaceId::FreeComplexSphere => {
            relations.extend(sphere_normalizations(n));
        }
        SpaceId::ClassicalSphere => {
            relations.extend(sphere_normalizations(n));
            for i in 1..=n {
                for j in (i + 1)..=n {
                    relations.push(comm_of_words(
                        &Word::new(vec![Letter::z(i)]),
                        &Word::new(vec![Letter::z(j)]),
                    ));
                }
            }
            for i in 1..=n {
                for j in i..=n {
                    relations.push(comm_of_words(
                        &Word::new(vec![Letter::z(i)]),
                        &Word::new(vec![Letter::z_star(j)]),
                    ));
                }
            }
        }
        SpaceId::KHalfSphere => {
            if word_length_bound < 2 * k {
                return Err(PresetError::WordLengthBound {
                    got: word_length_bound,
                    needed: 2 * k,
                });
            }
            relations.extend(sphere_normalizations(n));
            let blocks: Vec<Word> = index_tuples(n, k as usize)
                .iter()
                .map(|t| block_word(t))
                .collect();
            for (s, bs) in blocks.iter().enumerate() {
                for bt in blocks.iter().skip(s + 1) {
                    relations.push(comm_of_words(bs, bt));
                }
            }
            for bs in &blocks {
                for bt in &blocks {
                    relations.push(comm_of_words(bs, &bt.adjoint()));
                }
            }
        }
        SpaceId::StarHalfSphere => {
            relations.extend(sphere_normalizations(n));
            for i in 1..=n {
                for kk in (i + 1)..=n {
                    for j in 1..=n {
                        let lhs = word_poly(vec![Letter::z(i), Letter::z_star(j), Letter::z(kk)]);
                        let rhs = word_poly(vec![Letter::z(kk), Letter::z_star(j), Letter::z(i)]);
                        relations.push(&lhs - &rhs);
                    }
                }
            }
        }
        SpaceId::DoubleStarHalfSphere => {
            relations.extend(sphere_normalizations(n));
            let letters = sphere_letters(n);
            for (ai, a) in letters.iter().enumerate() {
                for c in letters.iter().skip(ai + 1) {
                    for b in letters.iter() {
                        let lhs = word_poly(vec![*a, *b, *c]);
                        let rhs = word_poly(vec![*c, *b, *a]);
                        relations.push(&lhs - &rhs);
                    }
                }
            }
        }
        SpaceId::StrongInfinitySphere => {
            relations.extend(sphere_normalizations(n));
            let mut family = Vec::new();
            for i in 1..=n {
                for j in 1..=n {
                    family.push(Word::new(vec![Letter::z_star(i), Letter::z(j)]));
                }
            }
            for i in 1..=n {
                for j in 1..=n {
                    family.push(Word::new(vec![Letter::z(j), Letter::z_star(i)]));
                }
            }
            family.sort();
            family.dedup();
            for (s, a) in family.iter().enumerate() {
                for b in family.iter().skip(s + 1) {
                    relations.push(comm_of_words(a, b));
                }
            }
        }
        SpaceId::DeltaInfinitySphere => {
            if word_length_bound < 4 {
                return Err(PresetError::WordLengthBound {
                    got: word_length_bound,
                    needed: 4,
                });
            }
            relations.extend(sphere_normalizations(n));
            let mut words = Vec::new();
            let mut len = 2usize;
            while len + 2 <= word_length_bound as usize {
                words.extend(balanced_words(n, len));
                len += 2;
            }
            for (s, a) in words.iter().enumerate() {
                for b in words.iter().skip(s + 1) {
                    if a.len() + b.len() <= word_length_bound as usize {
                        let c = comm_of_words(a, b);
                        if !c.is_zero() {
                            relations.push(c);
                        }
                    }
                }
            }
        }
        SpaceId::UnkQuantumGroup => {
            relations.extend(biunitarity(n));
            let pairs: Vec<(u32, u32)> = (1..=n)
                .flat_map(|i| (1..=n).map(move |j| (i, j)))
                .collect();
            let blocks: Vec<Word> = tuples_over(&pairs, k as usize)
                .iter()
                .map(|t| entry_block_word(t))
                .collect();
            for (s, bs) in blocks.iter().enumerate() {
                for bt in blocks.iter().skip(s + 1) {
                    relations.push(comm_of_words(bs, bt));
                }
            }
        }
        SpaceId::UInfinityQuantumGroup => {
            relations.extend(biunitarity(n));
            let mut family = Vec::new();
            for i in 1..=n {
                for j in 1..=n {
                    for p in 1..=n {
                        for q in 1..=n {
                            family.push(Word::new(vec![Letter::u(i, j), Letter::u_star(p, q)]));
                            family.push(Word::new(vec![Letter::u_star(i, j), Letter::u(p, q)]));
                        }
                    }
                }
            }
            family.sort();
            family.dedup();
            for (s, a) in family.iter().enumerate() {
                for b in family.iter().skip(s + 1) {
                    relations.push(comm_of_words(a, b));
                }
            }
        }
    }
    Ok(RelationSet {
        space,
        n,
        k,
        word_length_bound,
        relations,
    })
}

/// The four biunitarity families of an `N x N` matrix of coordinates:
/// `u u^* = u^* u = 1` and `u^t ū = ū u^t = 1`, entrywise.
fn biunitarity(n: u32) -> Vec<Polynomial> {
    let mut out = Vec::new();
    let delta = |i: u32, j: u32| -> Complex64 {
        if i == j {
            one()
        } else {
            Complex64::new(0.0, 0.0)
        }
    };
    for i in 1..=n {
        for j in 1..=n {
            let mut a = Polynomial::zero();
            let mut b = Polynomial::zero();
            let mut c = Polynomial::zero();
            let mut d = Polynomial::zero();
            for l in 1..=n {
                a.add_term(Word::new(vec![Letter::u(i, l), Letter::u_star(j, l)]), one());
                b.add_term(Word::new(vec![Letter::u_star(l, i), Letter::u(l, j)]), one());
                c.add_term(Word::new(vec![Letter::u(l, i), Letter::u_star(l, j)]), one());
                d.add_term(Word::new(vec![Letter::u_star(i, l), Letter::u(j, l)]), one());
            }
            for mut p in [a, b, c, d] {
                p.add_term(Word::unit(), -delta(i, j));
                out.push(p);
            }
        }
    }
    out
}

/// All tuples over an arbitrary alphabet, lexicographic in alphabet order.
fn tuples_over<T: Copy>(alphabet: &[T], len: usize) -> Vec<Vec<T>> {
    let m = alphabet.len();
    let mut out = Vec::with_capacity(m.pow(len as u32));
    let mut idx = vec![0usize; len];
    loop {
        out.push(idx.iter().map(|&i| alphabet[i]).collect());
        let mut pos = len;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if idx[pos] + 1 < m {
                idx[pos] += 1;
                for x in idx.iter_mut().skip(pos + 1) {
                    *x = 0;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::grading_degree;
    use super::*;

    fn contains_up_to_sign(rels: &[Polynomial], p: &Polynomial) -> bool {
        let neg = -p;
        rels.iter().any(|r| r == p || *r == neg)
    }

    #[test]
    fn k_half_preset_contains_expected_commutators() {
        let rs = relation_preset(SpaceId::KHalfSphere, 2, 2, 4).unwrap();
        let b12 = Word::new(vec![Letter::z(1), Letter::z(2)]);
        let b11 = Word::new(vec![Letter::z(1), Letter::z(1)]);
        let c1 = comm_of_words(&b12, &b11);
        assert!(contains_up_to_sign(&rs.relations, &c1));
        let c2 = comm_of_words(&b12, &b11.adjoint());
        assert!(contains_up_to_sign(&rs.relations, &c2));
        // normalizations always present
        assert!(rs.relations.len() >= 2);
    }

    #[test]
    fn classical_preset_contains_expected_commutators() {
        let rs = relation_preset(SpaceId::ClassicalSphere, 2, 1, 4).unwrap();
        let c1 = comm_of_words(
            &Word::new(vec![Letter::z(1)]),
            &Word::new(vec![Letter::z(2)]),
        );
        let c2 = comm_of_words(
            &Word::new(vec![Letter::z(1)]),
            &Word::new(vec![Letter::z_star(1)]),
        );
        assert!(contains_up_to_sign(&rs.relations, &c1));
        assert!(contains_up_to_sign(&rs.relations, &c2));
    }

    #[test]
    fn strong_infinity_contains_mixed_commutator() {
        let rs = relation_preset(SpaceId::StrongInfinitySphere, 2, 1, 4).unwrap();
        let a = Word::new(vec![Letter::z_star(1), Letter::z(2)]);
        let b = Word::new(vec![Letter::z(2), Letter::z_star(1)]);
        assert!(contains_up_to_sign(&rs.relations, &comm_of_words(&a, &b)));
    }

    #[test]
    fn k_half_relations_are_grade_zero() {
        for k in [1u32, 2, 3] {
            let rs = relation_preset(SpaceId::KHalfSphere, 2, k, 2 * k.max(2)).unwrap();
            for rel in &rs.relations {
                for (w, _) in rel.terms() {
                    assert_eq!(grading_degree(w, k), 0, "relation {rel} not grade 0");
                }
            }
        }
    }

    #[test]
    fn word_length_bound_is_enforced() {
        assert_eq!(
            relation_preset(SpaceId::KHalfSphere, 2, 3, 4),
            Err(PresetError::WordLengthBound { got: 4, needed: 6 })
        );
        assert!(relation_preset(SpaceId::DeltaInfinitySphere, 2, 1, 2).is_err());
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        assert!(relation_preset(SpaceId::ClassicalSphere, 0, 1, 4).is_err());
        assert!(relation_preset(SpaceId::KHalfSphere, 2, 0, 4).is_err());
    }

    #[test]
    fn delta_infinity_truncation_counts() {
        let rs = relation_preset(SpaceId::DeltaInfinitySphere, 2, 1, 4).unwrap();
        // 8 balanced words of length 2 over N=2, all unordered pairs, plus
        // the two normalizations; [x,x] dropped.
        assert_eq!(rs.relations.len(), 2 + 28);
        let rs6 = relation_preset(SpaceId::DeltaInfinitySphere, 2, 1, 6).unwrap();
        assert!(rs6.relations.len() > rs.relations.len());
        assert_eq!(rs6.descriptor(), "delta_infinity_sphere[wlb=6]");
    }

    #[test]
    fn unk_preset_has_biunitarity_and_blocks() {
        let rs = relation_preset(SpaceId::UnkQuantumGroup, 2, 2, 4).unwrap();
        // 4 families x N^2 biunitarity relations + C(16,2) block commutators
        assert_eq!(rs.relations.len(), 16 + 120);
        let a = entry_block_word(&[(1, 1), (1, 2)]);
        let b = entry_block_word(&[(2, 1), (2, 2)]);
        assert!(contains_up_to_sign(&rs.relations, &comm_of_words(&a, &b)));
    }

    #[test]
    fn space_ids_roundtrip_strings() {
        for id in SpaceId::ALL {
            let back: SpaceId = id.as_str().parse().unwrap();
            assert_eq!(back, id);
        }
        assert!("no_such_space".parse::<SpaceId>().is_err());
    }
}
