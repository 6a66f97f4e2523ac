//! Ready-made generator sets for the example groups.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::gn::GnElem;
use crate::iet::Iet;
use crate::numfield::{q_linear_rank, AlgebraicNumber, Field};
use crate::perm::Perm;

use super::{Family, GeneratorSet, Relation, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    /// `⟨a, b | b a b⁻¹ = a⁻¹⟩` in `G_2`.
    Bs11,
    /// `⟨a, b | b a² b⁻¹ = a⁻², a b² a⁻¹ = b⁻²⟩` in `G_4`.
    Crystallographic,
    /// `⟨R_α, g⟩` with `g` swapping the outer thirds.
    Metabelian3,
    /// `⟨R_α, t_a⟩` with `t_a` running over generators of `𝒜_n`.
    Alternating(usize),
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::Bs11 => write!(f, "bs11"),
            Builtin::Crystallographic => write!(f, "crystallographic"),
            Builtin::Metabelian3 => write!(f, "metabelian3"),
            Builtin::Alternating(n) => write!(f, "alternating{n}"),
        }
    }
}

impl Builtin {
    /// Accepts `bs11`, `crystallographic`, `metabelian3`, `alternating` (n = 5),
    /// `alternating7`, `alternating(7)` and `alternating:7`.
    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "bs11" => return Some(Builtin::Bs11),
            "crystallographic" => return Some(Builtin::Crystallographic),
            "metabelian3" => return Some(Builtin::Metabelian3),
            "alternating" => return Some(Builtin::Alternating(5)),
            _ => {}
        }
        let rest = s.strip_prefix("alternating")?;
        let digits = rest.trim_start_matches([':', '(']).trim_end_matches(')');
        digits.parse().ok().map(Builtin::Alternating)
    }

    /// Parameter names, in order.
    pub fn parameters(&self) -> &'static [&'static str] {
        match self {
            Builtin::Bs11 => &["alpha", "beta1", "beta2"],
            Builtin::Crystallographic => &["alpha", "beta"],
            Builtin::Metabelian3 | Builtin::Alternating(_) => &["alpha"],
        }
    }

    fn default_param(&self, field: &Field, name: &str) -> AlgebraicNumber {
        let t = field.theta();
        let q = |a: &AlgebraicNumber, d: i64| a / &field.from_int(d);
        match (self, name) {
            (Builtin::Bs11, "alpha") => q(&t, 4),
            (Builtin::Bs11, "beta1") => q(&(&t * &t), 4),
            (Builtin::Bs11, _) => q(&(&(&t * &t) * &t), 4),
            (Builtin::Crystallographic, "alpha") => q(&t, 8),
            (Builtin::Crystallographic, _) => q(&(&t * &t), 8),
            (Builtin::Metabelian3, _) => q(&(&t - &field.one()), 3),
            (Builtin::Alternating(n), _) => q(&(&t - &field.one()), *n as i64),
        }
    }
}

/// Parameter overrides by name; missing ones take their defaults.
pub type BuiltinParams = BTreeMap<String, AlgebraicNumber>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuiltinError {
    #[error(
        "independence constraint violated: rank over ℚ of (1, {names}) is {rank}, needs {needed}"
    )]
    Independence {
        names: String,
        rank: usize,
        needed: usize,
    },
    #[error("interval constraint violated: {name} = {value} must lie in (0, {bound})")]
    Interval {
        name: String,
        value: String,
        bound: String,
    },
    #[error("unknown parameter '{0}'")]
    UnknownParameter(String),
    #[error("alternating family needs n ≥ 5, got {0}")]
    TooFewBlocks(usize),
    #[error("parameters must lie in the chosen field")]
    MixedFields,
}

#[derive(Debug, Clone)]
pub struct BuiltinGroup {
    pub builtin: Builtin,
    pub params: Vec<(String, AlgebraicNumber)>,
    pub gens: GeneratorSet,
    /// Generators that lie in some `G_n`, as rotation vector and permutation.
    pub gn: Vec<(String, GnElem)>,
    pub family: Option<Family>,
}

fn relator(s: &str) -> Relation {
    Relation::relator(Word::parse(s).expect("builtin relator"))
}

fn gn(alpha: Vec<AlgebraicNumber>, sigma: &[usize]) -> GnElem {
    GnElem::from_parts(alpha, sigma).expect("builtin element")
}

pub fn builtin(
    which: Builtin,
    field: &Field,
    overrides: &BuiltinParams,
) -> Result<BuiltinGroup, BuiltinError> {
    for k in overrides.keys() {
        if !which.parameters().contains(&k.as_str()) {
            return Err(BuiltinError::UnknownParameter(k.clone()));
        }
    }
    if let Builtin::Alternating(n) = which {
        if n < 5 {
            return Err(BuiltinError::TooFewBlocks(n));
        }
    }
    let params: Vec<(String, AlgebraicNumber)> = which
        .parameters()
        .iter()
        .map(|&p| {
            let v = overrides
                .get(p)
                .cloned()
                .unwrap_or_else(|| which.default_param(field, p));
            (p.to_string(), v)
        })
        .collect();
    if params.iter().any(|(_, v)| v.field() != field) {
        return Err(BuiltinError::MixedFields);
    }
    let mut values = vec![field.one()];
    values.extend(params.iter().map(|(_, v)| v.clone()));
    let rank = q_linear_rank(&values);
    if rank < values.len() {
        return Err(BuiltinError::Independence {
            names: which.parameters().join(", "),
            rank,
            needed: values.len(),
        });
    }
    let bound = match which {
        Builtin::Bs11 => 2,
        Builtin::Crystallographic => 4,
        Builtin::Metabelian3 => 3,
        Builtin::Alternating(n) => n as i64,
    };
    let upper = field.ratio(1, bound);
    for (name, v) in &params {
        if !v.is_positive() || *v >= upper {
            return Err(BuiltinError::Interval {
                name: name.clone(),
                value: v.to_string(),
                bound: format!("1/{bound}"),
            });
        }
    }
    let p = |i: usize| params[i].1.clone();
    let zero = field.zero();
    let mut gn_gens: Vec<(String, GnElem)> = Vec::new();
    let mut plain: Vec<(String, Iet)> = Vec::new();
    let mut relations = Vec::new();
    let mut family = None;
    match which {
        Builtin::Bs11 => {
            gn_gens.push(("a".into(), gn(vec![p(0), -&p(0)], &[1, 2])));
            gn_gens.push(("b".into(), gn(vec![p(1), p(2)], &[2, 1])));
            relations.push(relator("b a b^-1 a"));
        }
        Builtin::Crystallographic => {
            let (a, b) = (p(0), p(1));
            gn_gens.push((
                "a".into(),
                gn(
                    vec![zero.clone(), a.clone(), -&a, zero.clone()],
                    &[3, 4, 1, 2],
                ),
            ));
            gn_gens.push((
                "b".into(),
                gn(
                    vec![b.clone(), zero.clone(), -&b, zero.clone()],
                    &[4, 3, 2, 1],
                ),
            ));
            relations.push(relator("b a^2 b^-1 a^2"));
            relations.push(relator("a b^2 a^-1 b^2"));
        }
        Builtin::Metabelian3 => {
            plain.push(("r".into(), Iet::rotation(&p(0))));
            gn_gens.push(("g".into(), gn(vec![zero.clone(); 3], &[3, 2, 1])));
            relations.push(relator("g^2"));
            family = Some(Family::Metabelian3 { alpha: p(0) });
        }
        Builtin::Alternating(n) => {
            plain.push(("r".into(), Iet::rotation(&p(0))));
            let three = Perm::from_cycles(n, &[&[1, 2, 3]]).expect("n ≥ 5");
            let long: Vec<usize> = if n % 2 == 1 {
                (1..=n).collect()
            } else {
                (2..=n).collect()
            };
            let cycle = Perm::from_cycles(n, &[&long]).expect("valid cycle");
            for (name, perm) in [("t1", three), ("t2", cycle)] {
                let order = perm.order();
                let e = GnElem::new(vec![zero.clone(); n], perm).expect("valid element");
                gn_gens.push((name.into(), e));
                relations.push(Relation::relator(Word::letter(name, order as i64)));
            }
            family = Some(Family::Alternating { n, alpha: p(0) });
        }
    }
    let mut all: Vec<(String, Iet)> = plain;
    all.extend(gn_gens.iter().map(|(n, e)| (n.clone(), e.embed())));
    let gens = GeneratorSet::new(all)
        .and_then(|g| g.with_relations(relations))
        .expect("builtin generator set");
    Ok(BuiltinGroup {
        builtin: which,
        params,
        gens,
        gn: gn_gens,
        family,
    })
}
