//! State polynomials over chain monomials, elementary operators, exact
//! derivations, and the Fock inner product.

use std::collections::hash_map::Entry;
use std::collections::HashMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use csmm_exact::{rat_int, Rational};

use crate::monomial::{Chain, Head, Monomial, Tail};
use crate::params::ModelParams;

/// A concrete (`Conc`) or pending (`Wire`) operator index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum End {
    /// Concrete 0-based index.
    Conc(u8),
    /// Pending wire.
    Wire(u32),
}

impl End {
    pub(crate) fn as_head(self) -> Head {
        match self {
            End::Conc(i) => Head::Conc(i),
            End::Wire(w) => Head::Wire(w),
        }
    }
    pub(crate) fn as_tail(self) -> Tail {
        match self {
            End::Conc(i) => Tail::Conc(i),
            End::Wire(w) => Tail::Wire(w),
        }
    }
}

/// Elementary creation/annihilation symbols with concrete indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElementarySymbol {
    /// `Zdag^i_j` (creation).
    ZDag(u8, u8),
    /// `Z^i_j` (annihilation, `eps1 * d/dZdag^j_i`).
    Z(u8, u8),
    /// `lamdag^a_i` (creation).
    LamDag(u8, u8),
    /// `lam^i_a` (annihilation, `eps1 * d/dlamdag^a_i`).
    Lam(u8, u8),
}

/// Errors from state-level operations.
#[derive(Debug, Error)]
pub enum FockError {
    /// Parameter sets of two operands disagree.
    #[error("mismatched model parameters: {0:?} vs {1:?}")]
    ParamMismatch(ModelParams, ModelParams),
    /// A ground state was requested outside the implemented window.
    #[error("{0}")]
    Unsupported(String),
}

/// A finite linear combination of chain monomials acting on the vacuum.
#[derive(Clone, Debug, PartialEq)]
pub struct FockPoly {
    /// Model parameters (the rank enters through welding).
    pub params: ModelParams,
    /// Monomial -> coefficient; zero coefficients are dropped eagerly.
    pub terms: HashMap<Monomial, Rational>,
}

impl FockPoly {
    /// The zero state.
    pub fn zero(params: ModelParams) -> Self {
        Self {
            params,
            terms: HashMap::new(),
        }
    }

    /// The Fock vacuum.
    pub fn vacuum(params: ModelParams) -> Self {
        let mut s = Self::zero(params);
        s.terms.insert(Monomial::one(), rat_int(1));
        s
    }

    /// Adds `c * mon` into the state.
    pub fn add_term(&mut self, mon: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mon) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &FockPoly, c: &Rational) {
        assert_eq!(self.params, other.params, "parameter mismatch");
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    /// Multiplies all coefficients by `c`.
    pub fn scale(&mut self, c: &Rational) {
        if c.is_zero() {
            self.terms.clear();
            return;
        }
        for v in self.terms.values_mut() {
            *v *= c;
        }
    }

    /// True iff the state is identically zero.
    ///
    /// This is the *formal* test on the compressed chain/loop representation.
    /// Chain monomials are not linearly independent as Fock states once
    /// word lengths reach the matrix rank (Cayley-Hamilton and its trace
    /// consequences relate them), so a formally nonzero combination can still
    /// be the zero state.  Use [`FockPoly::is_null`] for the faithful test.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True iff the state is zero as an actual Fock-space vector.
    ///
    /// Expands every chain/loop monomial into elementary oscillator entries
    /// and checks that all coefficients cancel.  Exponential in the energy of
    /// the monomials (base `rank`), so intended for small-rank certification.
    pub fn is_null(&self) -> bool {
        if self.terms.is_empty() {
            return true;
        }
        let rank = self.params.rank;
        let mut acc: HashMap<Vec<ElemSym>, Rational> = HashMap::new();
        for (m, c) in &self.terms {
            expand_mono(m, rank, &mut |key| match acc.entry(key) {
                Entry::Occupied(mut e) => {
                    *e.get_mut() += c;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
                Entry::Vacant(e) => {
                    e.insert(c.clone());
                }
            });
        }
        acc.is_empty()
    }

    /// Number of stored monomials.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// True iff no monomials are stored.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Multiplies a fully concrete creation monomial into the state.
    pub fn mul_monomial(&self, extra: &Monomial) -> FockPoly {
        let mut out = FockPoly::zero(self.params);
        for (m, c) in &self.terms {
            let mut nm = m.clone();
            nm.chains.extend_from_slice(&extra.chains);
            nm.loops.extend_from_slice(&extra.loops);
            nm.normalize_order();
            out.add_term(nm, c.clone());
        }
        out
    }

    /// Applies an elementary symbol.
    pub fn apply_symbol(&self, sym: ElementarySymbol) -> FockPoly {
        let rank = self.params.rank;
        let mut out = FockPoly::zero(self.params);
        match sym {
            ElementarySymbol::ZDag(i, j) => {
                for (m, c) in &self.terms {
                    if let Some((f, nm)) = mul_chain_mono(
                        m,
                        Chain {
                            head: Head::Conc(i),
                            z: 1,
                            tail: Tail::Conc(j),
                        },
                        rank,
                    ) {
                        out.add_term(nm, c * f);
                    }
                }
            }
            ElementarySymbol::LamDag(a, i) => {
                for (m, c) in &self.terms {
                    if let Some((f, nm)) = mul_chain_mono(
                        m,
                        Chain {
                            head: Head::Lam(a),
                            z: 0,
                            tail: Tail::Conc(i),
                        },
                        rank,
                    ) {
                        out.add_term(nm, c * f);
                    }
                }
            }
            ElementarySymbol::Z(i, j) => {
                // Z^i_j = eps1 * d/dZdag^j_i.
                let eps1 = self.params.eps1();
                for (m, c) in &self.terms {
                    for (f, nm) in diff_z_mono(m, End::Conc(j), End::Conc(i), rank) {
                        out.add_term(nm, c * f * &eps1);
                    }
                }
            }
            ElementarySymbol::Lam(a, i) => {
                let eps1 = self.params.eps1();
                for (m, c) in &self.terms {
                    for (f, nm) in diff_lam_mono(m, a, End::Conc(i), rank) {
                        out.add_term(nm, c * f * &eps1);
                    }
                }
            }
        }
        out
    }

    /// Serializes to JSON (coefficients as `num/den` strings).
    pub fn to_json_string(&self) -> String {
        #[derive(Serialize)]
        struct Repr<'a> {
            params: &'a ModelParams,
            terms: Vec<(&'a Monomial, String)>,
        }
        let mut terms: Vec<(&Monomial, String)> =
            self.terms.iter().map(|(m, c)| (m, c.to_string())).collect();
        terms.sort_by(|a, b| a.0.cmp(b.0));
        serde_json::to_string(&Repr {
            params: &self.params,
            terms,
        })
        .expect("serialization cannot fail")
    }

    /// Deserializes from [`FockPoly::to_json_string`] output.
    pub fn from_json_string(text: &str) -> Result<Self, String> {
        #[derive(Deserialize)]
        struct Repr {
            params: ModelParams,
            terms: Vec<(Monomial, String)>,
        }
        let repr: Repr = serde_json::from_str(text).map_err(|e| e.to_string())?;
        let mut out = FockPoly::zero(repr.params);
        for (m, c) in repr.terms {
            let c: Rational = c.parse().map_err(|e| format!("bad coefficient: {e}"))?;
            out.add_term(m, c);
        }
        Ok(out)
    }
}

/// Multiplies one chain into a monomial and welds.  At most one result.
pub(crate) fn mul_chain_mono(
    mon: &Monomial,
    chain: Chain,
    rank: u32,
) -> Option<(Rational, Monomial)> {
    let mut nm = mon.clone();
    nm.chains.push(chain);
    let f = nm.weld(rank)?;
    Some((f, nm))
}

/// `d/dZdag^x_y` of a monomial: splits every chain and opens every loop.
pub(crate) fn diff_z_mono(
    mon: &Monomial,
    x: End,
    y: End,
    rank: u32,
) -> Vec<(Rational, Monomial)> {
    let mut out = Vec::new();
    // Loops: d/dZdag^x_y Tr(Zdag^d) = d * (Zdag^(d-1))^y_x.
    for (li, &d) in mon.loops.iter().enumerate() {
        let mut nm = mon.clone();
        nm.loops.remove(li);
        nm.chains.push(Chain {
            head: y.as_head(),
            z: d - 1,
            tail: x.as_tail(),
        });
        if let Some(f) = nm.weld(rank) {
            out.push((f * rat_int(d as i64), nm));
        }
    }
    // Chains: split at every internal position.
    for (ci, ch) in mon.chains.iter().enumerate() {
        if ch.z == 0 {
            continue;
        }
        for r in 0..ch.z {
            let s = ch.z - 1 - r;
            let mut nm = mon.clone();
            nm.chains.remove(ci);
            nm.chains.push(Chain {
                head: ch.head,
                z: r,
                tail: x.as_tail(),
            });
            nm.chains.push(Chain {
                head: y.as_head(),
                z: s,
                tail: ch.tail,
            });
            if let Some(f) = nm.weld(rank) {
                out.push((f, nm));
            }
        }
    }
    out
}

/// `d/dlamdag^a_x` of a monomial: removes one flavor head.
pub(crate) fn diff_lam_mono(
    mon: &Monomial,
    a: u8,
    x: End,
    rank: u32,
) -> Vec<(Rational, Monomial)> {
    let mut out = Vec::new();
    for (ci, ch) in mon.chains.iter().enumerate() {
        if ch.head != Head::Lam(a) {
            continue;
        }
        let mut nm = mon.clone();
        nm.chains.remove(ci);
        nm.chains.push(Chain {
            head: x.as_head(),
            z: ch.z,
            tail: ch.tail,
        });
        if let Some(f) = nm.weld(rank) {
            out.push((f, nm));
        }
    }
    out
}

/// Renames the head-position wire `from` to `to` and welds (used to close a
/// trace word against its starting wire).
pub(crate) fn close_head_wire(
    mon: &Monomial,
    from: u32,
    to: u32,
    rank: u32,
) -> Option<(Rational, Monomial)> {
    let mut nm = mon.clone();
    for c in nm.chains.iter_mut() {
        if c.head == Head::Wire(from) {
            c.head = Head::Wire(to);
        }
    }
    let f = nm.weld(rank)?;
    Some((f, nm))
}

/// Substitutes a concrete row index for the head-position wire `w` (used to
/// terminate an open word).
pub(crate) fn subst_head_wire(
    mon: &Monomial,
    w: u32,
    row: u8,
    rank: u32,
) -> Option<(Rational, Monomial)> {
    let mut nm = mon.clone();
    for c in nm.chains.iter_mut() {
        if c.head == Head::Wire(w) {
            c.head = Head::Conc(row);
        }
    }
    let f = nm.weld(rank)?;
    Some((f, nm))
}

// ---------------------------------------------------------------------------
// Inner product via elementary expansion.
// ---------------------------------------------------------------------------

/// Elementary symbol occurring in the expansion of a closed monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) enum ElemSym {
    /// `Zdag^i_j`.
    Zd(u8, u8),
    /// `lamdag^a_i`.
    Ld(u8, u8),
}

/// Expands a closed monomial into elementary-symbol multisets with unit
/// coefficients, invoking `emit` for each path choice.
fn expand_mono(mon: &Monomial, rank: u32, emit: &mut dyn FnMut(Vec<ElemSym>)) {
    // Pre-compute the per-atom expansions as lists of alternatives.
    let mut atoms: Vec<Vec<Vec<ElemSym>>> = Vec::new();
    for ch in &mon.chains {
        let mut alts = Vec::new();
        match (ch.head, ch.tail) {
            (Head::Lam(a), Tail::Conc(t)) => {
                // lamdag^a_{j0} Zdag^{j0}_{j1} ... Zdag^{j_{z-1}}_t.
                enumerate_paths(ch.z, rank, &mut |path| {
                    let mut syms = Vec::with_capacity(ch.z as usize + 1);
                    let first = if ch.z == 0 { t } else { path[0] };
                    syms.push(ElemSym::Ld(a, first));
                    push_z_path(&mut syms, path, t);
                    alts.push(syms);
                });
            }
            (Head::Conc(h), Tail::Conc(t)) => {
                assert!(ch.z >= 1, "zero-length concrete chain survived welding");
                enumerate_paths(ch.z - 1, rank, &mut |inner| {
                    let mut syms = Vec::with_capacity(ch.z as usize);
                    let mut prev = h;
                    for &j in inner.iter() {
                        syms.push(ElemSym::Zd(prev, j));
                        prev = j;
                    }
                    syms.push(ElemSym::Zd(prev, t));
                    alts.push(syms);
                });
            }
            _ => panic!("cannot expand a monomial with pending wires"),
        }
        atoms.push(alts);
    }
    for &d in &mon.loops {
        let mut alts = Vec::new();
        // Tr(Zdag^d): indices j0..j_{d-1} cyclically.
        enumerate_paths(d, rank, &mut |path| {
            let mut syms = Vec::with_capacity(d as usize);
            for t in 0..d as usize {
                syms.push(ElemSym::Zd(path[t], path[(t + 1) % d as usize]));
            }
            alts.push(syms);
        });
        atoms.push(alts);
    }
    // Cartesian product over atoms.
    let mut current: Vec<ElemSym> = Vec::new();
    fn rec(
        atoms: &[Vec<Vec<ElemSym>>],
        idx: usize,
        current: &mut Vec<ElemSym>,
        emit: &mut dyn FnMut(Vec<ElemSym>),
    ) {
        if idx == atoms.len() {
            let mut key = current.clone();
            key.sort_unstable();
            emit(key);
            return;
        }
        for alt in &atoms[idx] {
            let len = current.len();
            current.extend_from_slice(alt);
            rec(atoms, idx + 1, current, emit);
            current.truncate(len);
        }
    }
    rec(&atoms, 0, &mut current, emit);
}

/// Helper: a lam-chain body `Zdag^{j0}_{j1}...Zdag^{j_{z-1}}_t` given the
/// internal path `j0..j_{z-1}`.
fn push_z_path(syms: &mut Vec<ElemSym>, path: &[u8], t: u8) {
    for w in 0..path.len() {
        let next = if w + 1 < path.len() { path[w + 1] } else { t };
        syms.push(ElemSym::Zd(path[w], next));
    }
}

/// Enumerates all index tuples of the given length over `0..rank`.
fn enumerate_paths(len: u32, rank: u32, f: &mut dyn FnMut(&[u8])) {
    let mut buf = vec![0u8; len as usize];
    fn rec(buf: &mut Vec<u8>, pos: usize, rank: u8, f: &mut dyn FnMut(&[u8])) {
        if pos == buf.len() {
            f(buf);
            return;
        }
        for j in 0..rank {
            buf[pos] = j;
            rec(buf, pos + 1, rank, f);
        }
    }
    rec(&mut buf, 0, rank as u8, f);
}

/// Exact Fock inner product `<a, b>` (both states over the same parameters).
///
/// Implemented by expanding `a` into elementary multisets and streaming the
/// expansion of `b` against it; distinct elementary monomials are orthogonal
/// and `<s^n vac, s^n vac> = n! eps1^n` per distinct symbol.
pub fn inner_product(a: &FockPoly, b: &FockPoly) -> Rational {
    assert_eq!(a.params, b.params, "parameter mismatch");
    let rank = a.params.rank;
    // Expand the smaller state into a map.
    let (held, streamed) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let mut map: HashMap<Vec<ElemSym>, Rational> = HashMap::new();
    for (m, c) in &held.terms {
        expand_mono(m, rank, &mut |key| {
            let e = map.entry(key).or_insert_with(Rational::zero);
            *e += c;
        });
    }
    let mut acc = Rational::zero();
    for (m, c) in &streamed.terms {
        expand_mono(m, rank, &mut |key| {
            if let Some(held_c) = map.get(&key) {
                acc += held_c * c * symmetry_factor(&key);
            }
        });
    }
    acc
}

/// `prod_sym (multiplicity!)` for a sorted symbol multiset.
fn symmetry_factor(key: &[ElemSym]) -> Rational {
    let mut f = rat_int(1);
    let mut run = 1i64;
    for w in 1..key.len() {
        if key[w] == key[w - 1] {
            run += 1;
            f *= rat_int(run);
        } else {
            run = 1;
        }
    }
    f
}
