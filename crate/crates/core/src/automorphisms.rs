//! Endomorphisms of `G` given by generator images.
//!
//! Every endomorphism either kills `x` (and then `y`), with `t` free, or is
//! an automorphism inner-equivalent to exactly one
//!
//! ```text
//! x -> x,  y -> y,  t -> g t      with g = y^n x^j y^-n in C_H(x)
//! ```
//!
//! and `g -> j / 2^n` identifies `Out(G)` with the dyadic rationals under
//! addition. [`classify_endo`] finds the normalizing conjugator step by step
//! and checks at every step the property the argument guarantees; a failed
//! check is reported as [`Error::InternalContradiction`].

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::britton::{
    britton_reduce, cyclic_reduce_g, g_conjugate, is_x_power, GWord, Reducer, Sign,
};
use crate::budget::Budget;
use crate::conjugacy::{chain_search, zero_class, ChainSearch, ZeroClass, DEFAULT_MAX_DEPTH};
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::h_arith::{h_normal_form, psi, AffineElem};
use crate::words::{Generator, Word};

/// The defining relations of `G`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    /// `y^-1 x y = x^2`
    XY,
    /// `t^-1 x t = y`
    XT,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::XY => "y^-1 x y = x^2",
            Relation::XT => "t^-1 x t = y",
        })
    }
}

/// Images `F(x)`, `F(y)`, `F(t)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AutImages {
    pub x: Word,
    pub y: Word,
    pub t: Word,
}

impl AutImages {
    pub fn new(x: Word, y: Word, t: Word) -> Self {
        AutImages { x, y, t }
    }

    pub fn identity() -> Self {
        AutImages {
            x: Word::x(1),
            y: Word::y(1),
            t: Word::t(1),
        }
    }

    pub fn image(&self, gen: Generator) -> &Word {
        match gen {
            Generator::X => &self.x,
            Generator::Y => &self.y,
            Generator::T => &self.t,
        }
    }

    /// Images of `s -> c^-1 F(s) c`.
    pub fn conjugated_by(&self, c: &Word) -> AutImages {
        AutImages {
            x: self.x.conjugate_by(c),
            y: self.y.conjugate_by(c),
            t: self.t.conjugate_by(c),
        }
    }
}

/// An element of `Out(G)`, written as a dyadic rational.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct OutClass(pub Dyadic);

impl fmt::Display for OutClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomCheck {
    Hom,
    /// `residue` is the reduced value of the first relator that is not the identity.
    NotHom {
        relation: Relation,
        residue: GWord,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    NotHom {
        relation: Relation,
        residue: GWord,
    },
    /// `F(x) = F(y) = 1`; `t` may go anywhere.
    Degenerate {
        t_image: Word,
    },
    /// Conjugating every image by `conjugator` gives `std_aut(out)`.
    Aut {
        out: OutClass,
        conjugator: Word,
    },
}

impl Classification {
    pub fn kind(&self) -> &'static str {
        match self {
            Classification::NotHom { .. } => "not_hom",
            Classification::Degenerate { .. } => "degenerate",
            Classification::Aut { .. } => "aut",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "kind: {}", self.kind())?;
        match self {
            Classification::NotHom { relation, residue } => {
                write!(f, "relation: {relation}\nwitness: {residue}")
            }
            Classification::Degenerate { t_image } => write!(f, "t_image: {t_image}"),
            Classification::Aut { out, conjugator } => {
                write!(f, "out_class: {out}\nconjugator: {conjugator}")
            }
        }
    }
}

/// Intermediate values of one run of the classifier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifyTrace {
    /// `F(x)` after the first normalization is `x^i`; always 1 for homomorphisms.
    pub x_exponent: BigInt,
    /// `F(t) = g1 t g2` at the pinch step.
    pub t_factors: (AffineElem, AffineElem),
    /// `g1^-1 x^i g1 = x^m`.
    pub pinch_exponent: BigInt,
    /// `F(y)` written as the affine pair `(p, 1)` just before it is normalized.
    pub y_image: AffineElem,
    /// Least `n >= 0` with `F(y) = y^(n+1) x^j y^-n` for an integer `j`.
    pub y_image_n: BigInt,
    /// `g` in `F(t) = g t`.
    pub centralizer_element: AffineElem,
}

fn bug(msg: impl Into<String>) -> Error {
    Error::InternalContradiction(msg.into())
}

pub fn verify_hom(f: &AutImages, budget: &Budget) -> Result<HomCheck> {
    let relators = [
        (
            Relation::XY,
            f.y.inverse()
                .concat(&f.x)
                .concat(&f.y)
                .concat(&f.x.inverse().pow(2)),
        ),
        (
            Relation::XT,
            f.t.inverse()
                .concat(&f.x)
                .concat(&f.t)
                .concat(&f.y.inverse()),
        ),
    ];
    for (relation, r) in relators {
        let residue = britton_reduce(&r, budget)?;
        if !residue.is_identity() {
            return Ok(HomCheck::NotHom { relation, residue });
        }
    }
    Ok(HomCheck::Hom)
}

/// Runs [`verify_hom`] and then [`classify_endo`], reporting failed relations
/// as [`Classification::NotHom`].
pub fn classify(f: &AutImages, budget: &Budget) -> Result<Classification> {
    match verify_hom(f, budget)? {
        HomCheck::NotHom { relation, residue } => Ok(Classification::NotHom { relation, residue }),
        HomCheck::Hom => classify_endo(f, budget),
    }
}

pub fn classify_endo(f: &AutImages, budget: &Budget) -> Result<Classification> {
    classify_endo_traced(f, budget).map(|(c, _)| c)
}

/// `c^-1 w c` as an element of `H`, or a contradiction naming `what`.
fn conjugated_h(w: &Word, c: &Word, budget: &Budget, what: &str) -> Result<AffineElem> {
    let g = g_conjugate(w, c, budget)?;
    g.as_h().cloned().ok_or_else(|| {
        bug(format!(
            "{what} should lie in H but has t-length {}",
            g.t_length()
        ))
    })
}

pub fn classify_endo_traced(
    f: &AutImages,
    budget: &Budget,
) -> Result<(Classification, Option<ClassifyTrace>)> {
    if let HomCheck::NotHom { relation, .. } = verify_hom(f, budget)? {
        return Err(Error::NotVerified(relation));
    }

    // The cyclically reduced core of F(x) has t-length 0.
    let (mut c, core) = cyclic_reduce_g(&f.x, budget)?;
    let a = core.as_h().cloned().ok_or_else(|| {
        bug(format!(
            "cyclic core of F(x) has t-length {}",
            core.t_length()
        ))
    })?;

    if a.is_identity() {
        if !britton_reduce(&f.y, budget)?.is_identity() {
            return Err(bug("F(x) = 1 but F(y) != 1"));
        }
        return Ok((
            Classification::Degenerate {
                t_image: f.t.clone(),
            },
            None,
        ));
    }

    // Conjugate the image of x onto x^i with i odd. When the core has zero
    // y-exponent this is a single conjugation by a power of y; otherwise the
    // core is conjugate into <y> and a Collins chain through t is needed.
    let i = match zero_class(&a, budget)? {
        ZeroClass::Merged(odd) => odd,
        other => {
            return Err(bug(format!(
                "F(x) core {a} is not conjugate into <x> ({other:?})"
            )))
        }
    };
    let target = AffineElem::x_pow(i.clone());
    let cert = match chain_search(&a, &target, budget, DEFAULT_MAX_DEPTH)? {
        ChainSearch::Found(cert) => cert,
        ChainSearch::NoChain { .. } => return Err(bug(format!("no chain from {a} to x^{i}"))),
    };
    c.append(&cert.global_conjugator());
    if conjugated_h(&f.x, &c, budget, "F(x)")? != target {
        return Err(bug("normalizing conjugator does not send F(x) to x^i"));
    }

    // With F(x) = x^i, F(y) has no t letters and F(t) has exactly one, t^+1.
    let fy = conjugated_h(&f.y, &c, budget, "F(y)")?;
    let ft = g_conjugate(&f.t, &c, budget)?;
    let (g1, g2) = match ft.tail() {
        [(Sign::Plus, g2)] => (ft.head().clone(), g2.clone()),
        _ => return Err(bug(format!("F(t) = {ft} should have exactly one letter t"))),
    };
    let m = is_x_power(&target.checked_conjugate(&g1, budget)?)
        .ok_or_else(|| bug("g1^-1 x^i g1 is not an integral power of x"))?;
    // F(y) has total y-exponent 1 and g1^-1 x^i g1 = x^1.
    if fy.n() != &BigInt::one() {
        return Err(bug(format!("F(y) = {fy} should have total y-exponent 1")));
    }
    if !m.is_one() {
        return Err(bug(format!("pinch exponent m = {m}, expected 1")));
    }
    c.append(&h_normal_form(&g1));
    let x_now = conjugated_h(&f.x, &c, budget, "F(x)")?;
    if x_now != AffineElem::x_pow(1) {
        return Err(bug(format!(
            "after absorbing g1, F(x) = {x_now} instead of x"
        )));
    }

    // F(y) = (p, 1) = y^(n+1) x^j y^-n; conjugating by x^(2p) = y^n x^j y^-n gives y.
    let y_image = conjugated_h(&f.y, &c, budget, "F(y)")?;
    let p = y_image.q().clone();
    let fix_y = AffineElem::translation(p.checked_mul_pow2(&BigInt::one(), budget)?);
    if y_image.checked_conjugate(&fix_y, budget)? != AffineElem::y_pow(1) {
        return Err(bug(format!(
            "conjugation by {fix_y} does not send F(y) = {y_image} to y"
        )));
    }
    c.append(&h_normal_form(&fix_y));

    // Now F(t) = g t with g centralizing x.
    let ft = g_conjugate(&f.t, &c, budget)?;
    let g = ft.mul(&GWord::t(Sign::Minus), budget)?;
    let g = g
        .as_h()
        .cloned()
        .ok_or_else(|| bug(format!("F(t) t^-1 = {g} should lie in H")))?;
    if !g.in_centralizer_of_x() {
        return Err(bug(format!("g = {g} does not centralize x")));
    }
    if conjugated_h(&f.y, &c, budget, "F(y)")? != AffineElem::y_pow(1) {
        return Err(bug("final conjugator does not fix y"));
    }
    let out = OutClass(psi(&g)?);

    let y_image_n = {
        let e = BigInt::from(p.den_exp());
        if e > BigInt::one() {
            e - 1
        } else {
            BigInt::zero()
        }
    };
    let trace = ClassifyTrace {
        x_exponent: i,
        t_factors: (g1, g2),
        pinch_exponent: m,
        y_image,
        y_image_n,
        centralizer_element: g,
    };
    let conjugator = britton_reduce(&c, budget)?.to_word();
    Ok((Classification::Aut { out, conjugator }, Some(trace)))
}

/// `x -> x`, `y -> y`, `t -> g t` with `psi(g) = d`.
pub fn std_aut(d: &Dyadic) -> AutImages {
    let g = h_normal_form(&AffineElem::translation(d.clone()));
    AutImages {
        x: Word::x(1),
        y: Word::y(1),
        t: g.concat(&Word::t(1)),
    }
}

/// Image of `w` under the substitution homomorphism, Britton-reduced.
pub fn apply_aut(f: &AutImages, w: &Word, budget: &Budget) -> Result<GWord> {
    let images = [
        britton_reduce(&f.x, budget)?,
        britton_reduce(&f.y, budget)?,
        britton_reduce(&f.t, budget)?,
    ];
    let mut r = Reducer::new(budget);
    for s in w.syllables() {
        let image = match s.gen {
            Generator::X => &images[0],
            Generator::Y => &images[1],
            Generator::T => &images[2],
        };
        r.push_gword(&image.pow(&s.exp, budget)?)?;
    }
    Ok(r.finish())
}

/// Images of `outer ∘ inner`: `s -> outer(inner(s))`.
pub fn compose_images(outer: &AutImages, inner: &AutImages, budget: &Budget) -> Result<AutImages> {
    Ok(AutImages {
        x: apply_aut(outer, &inner.x, budget)?.to_word(),
        y: apply_aut(outer, &inner.y, budget)?.to_word(),
        t: apply_aut(outer, &inner.t, budget)?.to_word(),
    })
}

pub fn compose_out(d1: &Dyadic, d2: &Dyadic) -> Dyadic {
    d1 + d2
}

pub fn invert_out(d: &Dyadic) -> Dyadic {
    -d
}

/// Whether two automorphisms differ by an inner automorphism.
pub fn inner_equiv(f1: &AutImages, f2: &AutImages, budget: &Budget) -> Result<bool> {
    let out = |f: &AutImages| match classify_endo(f, budget)? {
        Classification::Aut { out, .. } => Ok(out),
        _ => Err(Error::NotAutomorphism),
    };
    Ok(out(f1)? == out(f2)?)
}

/// Inverse of the automorphism classified as `Aut { out, conjugator }`.
///
/// From `c^-1 F(s) c = S_d(s)` we get `F^-1(z) = S_-d(c)^-1 S_-d(z) S_-d(c)`.
pub fn inverse_images(out: &OutClass, conjugator: &Word, budget: &Budget) -> Result<AutImages> {
    let s_inv = std_aut(&invert_out(&out.0));
    let sc = apply_aut(&s_inv, conjugator, budget)?.to_word();
    Ok(s_inv.conjugated_by(&sc))
}
