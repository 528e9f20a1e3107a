//! Conjugacy in `G` via Collins' lemma.
//!
//! Conjugate cyclically reduced elements have the same t-length, which gives
//! a cheap non-conjugacy proof. For elements of t-length zero (elements of
//! `H`) conjugacy in `G` factors through a chain
//!
//! ```text
//! u ~H v1 -t-> u1 ~H v2 -t-> u2 ... un ~H v
//! ```
//!
//! where every `vi`, `ui` is a power of `x` or of `y` and each `-t->` step is
//! one of `t^-1 x^k t = y^k` or `t y^k t^-1 = x^k`. The search here runs over
//! `H`-conjugacy classes of such powers: an `x`-power class is named by its
//! signed odd part (`x^k ~ x^2k` in `H`) and a `y`-power class by its exact
//! exponent.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::britton::{britton_reduce, cyclic_reduce_g, g_is_identity};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::h_arith::{h_conjugacy, h_conjugator, AffineElem};
use crate::words::Word;

pub const DEFAULT_MAX_DEPTH: usize = 64;

/// A power of one of the generators of the associated subgroups.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Power {
    X(BigInt),
    Y(BigInt),
}

impl Power {
    pub fn to_elem(&self) -> AffineElem {
        match self {
            Power::X(k) => AffineElem::x_pow(k.clone()),
            Power::Y(k) => AffineElem::y_pow(k.clone()),
        }
    }

    pub fn to_word(&self) -> Word {
        match self {
            Power::X(k) => Word::x(k.clone()),
            Power::Y(k) => Word::y(k.clone()),
        }
    }
}

impl fmt::Display for Power {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (letter, k) = match self {
            Power::X(k) => ('x', k),
            Power::Y(k) => ('y', k),
        };
        write!(f, "{letter}^{k}")
    }
}

/// `Down`: `u = t^-1 v t` (so `v = x^k`, `u = y^k`).
/// `Up`: `v = t^-1 u t` (so `v = y^k`, `u = x^k`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Down,
    Up,
}

impl Direction {
    /// Exponent of the `t` letter that conjugates `v` to `u`.
    pub fn t_exponent(self) -> i64 {
        match self {
            Direction::Down => 1,
            Direction::Up => -1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainLink {
    pub v: Power,
    pub u: Power,
    pub direction: Direction,
    /// Conjugates `u` to the next link's `v`, or to the target for the last link.
    pub h_conjugator: AffineElem,
}

impl ChainLink {
    fn is_pinch(&self) -> bool {
        match (self.direction, &self.v, &self.u) {
            (Direction::Down, Power::X(a), Power::Y(b)) => a == b,
            (Direction::Up, Power::Y(a), Power::X(b)) => a == b,
            _ => false,
        }
    }
}

/// A checkable witness that two elements of t-length zero are conjugate.
///
/// `start_conjugator` takes the source to the first link's `v` (or straight
/// to the target when there are no links).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainCertificate {
    pub start_conjugator: AffineElem,
    pub links: Vec<ChainLink>,
}

impl ChainCertificate {
    pub fn trivial(conjugator: AffineElem) -> Self {
        ChainCertificate {
            start_conjugator: conjugator,
            links: Vec::new(),
        }
    }

    /// The conjugator `c0 t^s1 h1 ... t^sn hn` in `G`, so that `c^-1 u c = v`.
    pub fn global_conjugator(&self) -> Word {
        let mut c = crate::h_arith::h_normal_form(&self.start_conjugator);
        for link in &self.links {
            c.append(&Word::t(link.direction.t_exponent()));
            c.append(&crate::h_arith::h_normal_form(&link.h_conjugator));
        }
        c
    }
}

impl fmt::Display for ChainCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "start ; conj={}", self.start_conjugator)?;
        for link in &self.links {
            let arrow = match link.direction {
                Direction::Down => "--t-->",
                Direction::Up => "--t^-1-->",
            };
            write!(
                f,
                "\nv={} {arrow} u={} ; conj={}",
                link.v, link.u, link.h_conjugator
            )?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainSearch {
    Found(ChainCertificate),
    /// `depth_capped` is set when the search stopped at the depth limit with
    /// unexplored states left, so the answer is not conclusive on its own.
    NoChain {
        depth_capped: bool,
    },
}

impl ChainSearch {
    pub fn certificate(&self) -> Option<&ChainCertificate> {
        match self {
            ChainSearch::Found(c) => Some(c),
            ChainSearch::NoChain { .. } => None,
        }
    }
}

/// `true` means "possibly conjugate"; `false` proves non-conjugacy.
pub fn t_length_obstruction(u: &Word, v: &Word, budget: &Budget) -> Result<bool> {
    let (_, cu) = cyclic_reduce_g(u, budget)?;
    let (_, cv) = cyclic_reduce_g(v, budget)?;
    Ok(cu.t_length() == cv.t_length())
}

fn zero_t_length(w: &Word, budget: &Budget) -> Result<AffineElem> {
    let g = britton_reduce(w, budget)?;
    match g.as_h() {
        Some(h) => Ok(h.clone()),
        None => Err(Error::WrongTLength {
            found: g.t_length(),
        }),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum State {
    /// x-powers with this signed odd part
    X(BigInt),
    /// exactly y^k
    Y(BigInt),
}

fn odd_part(k: &BigInt) -> BigInt {
    let tz = k.trailing_zeros().expect("nonzero");
    k >> tz
}

/// The class-of-powers state an `H` element is conjugate into, if any.
fn entry_state(a: &AffineElem, budget: &Budget) -> Result<Option<State>> {
    if a.n().is_zero() {
        return Ok(a.q().odd_part().map(|(odd, _)| State::X(odd)));
    }
    let y = AffineElem::y_pow(a.n().clone());
    Ok(h_conjugacy(a, &y, budget)?.then(|| State::Y(a.n().clone())))
}

fn state_rep(s: &State) -> Power {
    match s {
        State::X(o) => Power::X(o.clone()),
        State::Y(k) => Power::Y(k.clone()),
    }
}

/// Edge label: `(v, u, direction)`.
type Move = (Power, Power, Direction);

fn neighbours(s: &State, shift_cap: u64) -> Vec<(State, Move)> {
    match s {
        State::X(o) => (0..=shift_cap)
            .map(|sh| {
                let k = o << (sh as usize);
                (
                    State::Y(k.clone()),
                    (Power::X(k.clone()), Power::Y(k), Direction::Down),
                )
            })
            .collect(),
        State::Y(k) => {
            vec![(
                State::X(odd_part(k)),
                (Power::Y(k.clone()), Power::X(k.clone()), Direction::Up),
            )]
        }
    }
}

fn h_conj_or_bug(a: &AffineElem, b: &AffineElem, budget: &Budget) -> Result<AffineElem> {
    h_conjugator(a, b, budget)?.ok_or_else(|| {
        Error::InternalContradiction(format!("chain step {a} -> {b} is not an H-conjugacy"))
    })
}

/// Breadth-first search for a chain certificate between two elements of `H`.
pub fn chain_search(
    a: &AffineElem,
    b: &AffineElem,
    budget: &Budget,
    max_depth: usize,
) -> Result<ChainSearch> {
    if a.is_identity() || b.is_identity() {
        return Ok(if a.is_identity() && b.is_identity() {
            ChainSearch::Found(ChainCertificate::trivial(AffineElem::identity()))
        } else {
            ChainSearch::NoChain {
                depth_capped: false,
            }
        });
    }
    if let Some(c) = h_conjugator(a, b, budget)? {
        return Ok(ChainSearch::Found(ChainCertificate::trivial(c)));
    }
    let (Some(start), Some(target)) = (entry_state(a, budget)?, entry_state(b, budget)?) else {
        return Ok(ChainSearch::NoChain {
            depth_capped: false,
        });
    };

    // y-neighbours y^(o 2^s) of X(o) are cut off at the largest y-exponent in play.
    let shift_cap = [&start, &target]
        .iter()
        .filter_map(|s| match s {
            State::Y(k) => Some(k.abs().bits()),
            State::X(_) => None,
        })
        .max()
        .unwrap_or(0);

    let mut parent: HashMap<State, (State, Move)> = HashMap::new();
    let mut depth: HashMap<State, usize> = HashMap::from([(start.clone(), 0)]);
    let mut queue = VecDeque::from([start.clone()]);
    let mut capped = false;
    let mut found = false;
    while let Some(s) = queue.pop_front() {
        if s == target {
            found = true;
            break;
        }
        let d = depth[&s];
        if d == max_depth {
            capped = true;
            continue;
        }
        for (next, mv) in neighbours(&s, shift_cap) {
            if depth.contains_key(&next) {
                continue;
            }
            depth.insert(next.clone(), d + 1);
            parent.insert(next.clone(), (s.clone(), mv));
            queue.push_back(next);
        }
    }
    if !found {
        return Ok(ChainSearch::NoChain {
            depth_capped: capped,
        });
    }

    let mut moves = Vec::new();
    let mut cur = target;
    while cur != start {
        let (prev, mv) = parent.remove(&cur).expect("path recorded");
        moves.push(mv);
        cur = prev;
    }
    moves.reverse();
    if moves.is_empty() {
        return Err(Error::InternalContradiction(format!(
            "{a} and {b} share a class state but are not H-conjugate ({})",
            state_rep(&cur)
        )));
    }

    let start_conjugator = h_conj_or_bug(a, &moves[0].0.to_elem(), budget)?;
    let mut links = Vec::with_capacity(moves.len());
    for (i, (v, u, direction)) in moves.iter().enumerate() {
        let next = match moves.get(i + 1) {
            Some((nv, _, _)) => nv.to_elem(),
            None => b.clone(),
        };
        let h_conjugator = h_conj_or_bug(&u.to_elem(), &next, budget)?;
        links.push(ChainLink {
            v: v.clone(),
            u: u.clone(),
            direction: *direction,
            h_conjugator,
        });
    }
    Ok(ChainSearch::Found(ChainCertificate {
        start_conjugator,
        links,
    }))
}

/// Searches for a conjugacy certificate between two words of t-length zero.
pub fn conj_zero_g(u: &Word, v: &Word, budget: &Budget, max_depth: usize) -> Result<ChainSearch> {
    let a = zero_t_length(u, budget)?;
    let b = zero_t_length(v, budget)?;
    chain_search(&a, &b, budget, max_depth)
}

/// The `G`-conjugacy invariant of an element of `H`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ZeroClass {
    Identity,
    /// Conjugate to `x^odd` (and to every `x^(odd 2^s)`, `y^(odd 2^s)`).
    Merged(BigInt),
    /// Not conjugate into `<x>` or `<y>`; `G`-conjugacy is `H`-conjugacy.
    Isolated,
}

pub fn zero_class(a: &AffineElem, budget: &Budget) -> Result<ZeroClass> {
    if a.is_identity() {
        return Ok(ZeroClass::Identity);
    }
    Ok(match entry_state(a, budget)? {
        Some(State::X(o)) => ZeroClass::Merged(o),
        Some(State::Y(k)) => ZeroClass::Merged(odd_part(&k)),
        None => ZeroClass::Isolated,
    })
}

/// Closed-form conjugacy test for elements of t-length zero.
pub fn conj_zero_closed_form(u: &Word, v: &Word, budget: &Budget) -> Result<bool> {
    let a = zero_t_length(u, budget)?;
    let b = zero_t_length(v, budget)?;
    closed_form_h(&a, &b, budget)
}

pub fn closed_form_h(a: &AffineElem, b: &AffineElem, budget: &Budget) -> Result<bool> {
    Ok(match (zero_class(a, budget)?, zero_class(b, budget)?) {
        (ZeroClass::Identity, ZeroClass::Identity) => true,
        (ZeroClass::Merged(p), ZeroClass::Merged(q)) => p == q,
        (ZeroClass::Isolated, ZeroClass::Isolated) => h_conjugacy(a, b, budget)?,
        _ => false,
    })
}

/// Checks every clause of a certificate, then the assembled conjugator in `G`.
pub fn verify_chain(u: &Word, v: &Word, cert: &ChainCertificate, budget: &Budget) -> Result<bool> {
    let (Some(a), Some(b)) = (
        britton_reduce(u, budget)?.as_h().cloned(),
        britton_reduce(v, budget)?.as_h().cloned(),
    ) else {
        return Ok(false);
    };
    let first = cert
        .links
        .first()
        .map_or_else(|| b.clone(), |l| l.v.to_elem());
    if a.checked_conjugate(&cert.start_conjugator, budget)? != first {
        return Ok(false);
    }
    for (i, link) in cert.links.iter().enumerate() {
        if !link.is_pinch() {
            return Ok(false);
        }
        let next = cert
            .links
            .get(i + 1)
            .map_or_else(|| b.clone(), |l| l.v.to_elem());
        if link
            .u
            .to_elem()
            .checked_conjugate(&link.h_conjugator, budget)?
            != next
        {
            return Ok(false);
        }
    }
    let c = cert.global_conjugator();
    let check = c.inverse().concat(u).concat(&c).concat(&v.inverse());
    g_is_identity(&check, budget)
}
