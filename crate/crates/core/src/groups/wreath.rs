//! Realizing `A × F`, with `A` a group of rotations and `F` a finite
//! permutation group, inside `G_{#F}` through the map
//! `E((a_s), σ): (x, s) ↦ (a_s(x), σ s)`.
//!
//! Block `s` of `[0, 1)` holds a copy of the circle indexed by `s ∈ F`.
//! The image of `A` is diagonal (the same rotation in every block); the
//! whole of `A^F ⋊ F` is not free since a rotation in one block alone fixes
//! the others.

use thiserror::Error;

use crate::gn::GnElem;
use crate::numfield::{q_linear_rank, AlgebraicNumber, Field};
use crate::perm::{generated_group, Perm};

use super::{GeneratorSet, Relation, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WreathError {
    #[error("rotation angles together with 1 are ℚ-dependent (rank {rank} < {needed})")]
    DependentAngles { rank: usize, needed: usize },
    #[error("the permutation group F is trivial")]
    TrivialGroup,
    #[error("at least one rotation angle is required")]
    NoAngles,
    #[error("generators of F act on different sets")]
    MixedDegrees,
    #[error("F has more than {0} elements")]
    TooLarge(usize),
}

const MAX_ORDER: usize = 720;

#[derive(Debug, Clone)]
pub struct WreathEmbedding {
    /// Elements of `F` in a fixed order; element `k` owns block `k`.
    pub elements: Vec<Perm>,
    /// Named generators: `r1, r2, …` for the angles, `s1, s2, …` for `F`.
    pub generators: Vec<(String, GnElem)>,
    field: Field,
}

impl WreathEmbedding {
    pub fn n(&self) -> usize {
        self.elements.len()
    }

    fn index(&self, s: &Perm) -> usize {
        self.elements.binary_search(s).expect("element of F")
    }

    /// `E((a_s), σ)` where block `s` rotates by `angles[s]` (taken on the
    /// unit circle) and then moves to block `σ s`.
    pub fn e_map(&self, angles: &[AlgebraicNumber], sigma: &Perm) -> GnElem {
        let n = self.n();
        let scale = self.field.ratio(1, n as i64);
        let alpha = angles.iter().map(|a| a * &scale).collect();
        let images = self
            .elements
            .iter()
            .map(|s| self.index(&sigma.compose(s)))
            .collect();
        GnElem::new(
            alpha,
            Perm::from_images(images).expect("left multiplication"),
        )
        .expect("valid element")
    }

    /// The embedded generators with the relators of `A × F` they satisfy:
    /// the angles commute with everything, and each generator of `F` and
    /// each product of two has its order.
    pub fn generator_set(&self) -> GeneratorSet {
        let mut relations = Vec::new();
        let letter = |n: &str| Word::letter(n, 1);
        let (rot, fin): (Vec<_>, Vec<_>) = self
            .generators
            .iter()
            .partition(|(n, _)| n.starts_with('r'));
        for (i, (a, _)) in rot.iter().enumerate() {
            for (b, _) in rot[i + 1..].iter().chain(&fin) {
                relations.push(Relation::relator(Word::commutator(&letter(a), &letter(b))));
            }
        }
        for (i, (a, ga)) in fin.iter().enumerate() {
            relations.push(Relation::relator(
                letter(a).power(ga.sigma().order() as i64),
            ));
            for (b, gb) in &fin[i + 1..] {
                let k = ga.sigma().compose(gb.sigma()).order() as i64;
                relations.push(Relation::relator(letter(a).concat(&letter(b)).power(k)));
            }
        }
        GeneratorSet::new(
            self.generators
                .iter()
                .map(|(n, g)| (n.clone(), g.embed()))
                .collect(),
        )
        .and_then(|g| g.with_relations(relations))
        .expect("distinct names")
    }
}

pub fn wreath_embedding(
    angles: &[AlgebraicNumber],
    f_gens: &[Perm],
) -> Result<WreathEmbedding, WreathError> {
    let Some(first) = angles.first() else {
        return Err(WreathError::NoAngles);
    };
    let field = first.field().clone();
    let mut values = vec![field.one()];
    values.extend(angles.iter().cloned());
    let rank = q_linear_rank(&values);
    if rank < values.len() {
        return Err(WreathError::DependentAngles {
            rank,
            needed: values.len(),
        });
    }
    let degree = f_gens.first().map_or(1, Perm::n);
    if f_gens.iter().any(|g| g.n() != degree) {
        return Err(WreathError::MixedDegrees);
    }
    let group = generated_group(degree, f_gens, MAX_ORDER);
    if group.len() > MAX_ORDER {
        return Err(WreathError::TooLarge(MAX_ORDER));
    }
    if group.len() < 2 {
        return Err(WreathError::TrivialGroup);
    }
    let mut elements: Vec<Perm> = group.into_iter().collect();
    elements.sort();
    let mut emb = WreathEmbedding {
        elements,
        generators: Vec::new(),
        field,
    };
    let n = emb.n();
    let identity = Perm::identity(degree);
    for (k, a) in angles.iter().enumerate() {
        let g = emb.e_map(&vec![a.clone(); n], &identity);
        emb.generators.push((format!("r{}", k + 1), g));
    }
    for (k, s) in f_gens.iter().enumerate() {
        if s.is_identity() {
            continue;
        }
        let zero = vec![emb.field.zero(); n];
        let g = emb.e_map(&zero, s);
        emb.generators.push((format!("s{}", k + 1), g));
    }
    Ok(emb)
}
