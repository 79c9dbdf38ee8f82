//! Constructive data for solvable groups, built along the derived series.
//!
//! Each layer `Nᵢ/Nᵢ₊₁` is abelian and handled by a two-way isomorphism; the
//! layers are stitched together into a presentation and a membership test for
//! the whole group.

use std::fmt;

use crate::abelian::{
    abel_recog_2, membership_from_iso, presentation_from_iso, ConstructiveMembership,
    ConstructivePresentation, TwoWayIso,
};
use crate::blackbox::{derived_subgroup_words, enumerate_span, Congruence, Element, Group, Slp};
use crate::order::FactoredInteger;
use crate::{Error, Result};

/// `g ↦ (g^d = 1)`, the membership test of a unique Hall `d`-subgroup.
pub fn hall_membership(group: &Group, d: &FactoredInteger) -> Congruence {
    let g = group.clone();
    let d = d.value();
    Congruence::new(move |x| g.is_identity(&g.pow(x, d)).ok())
}

/// Derived series of a solvable group with an abelian two-way isomorphism
/// per layer, plus the stitched presentation and membership test.
#[derive(Clone)]
pub struct SolvableData {
    group: Group,
    n: FactoredInteger,
    bound: usize,
    top: TwoWayIso,
    // data for [G, G] with words of its generators over G's generators
    derived: Option<(Box<SolvableData>, Vec<Slp>)>,
    presentation: ConstructivePresentation,
    membership: ConstructiveMembership,
}

impl fmt::Debug for SolvableData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SolvableData")
            .field("layers", &self.layer_invariants())
            .finish()
    }
}

impl SolvableData {
    pub fn group(&self) -> &Group {
        &self.group
    }

    /// Two-way isomorphism onto `G/[G,G]`.
    pub fn top_layer(&self) -> &TwoWayIso {
        &self.top
    }

    pub fn derived(&self) -> Option<&SolvableData> {
        self.derived.as_ref().map(|(d, _)| d.as_ref())
    }

    /// Number of abelian layers.
    pub fn series_length(&self) -> usize {
        1 + self.derived().map_or(0, SolvableData::series_length)
    }

    /// Invariant factors of each layer, top first.
    pub fn layer_invariants(&self) -> Vec<Vec<u64>> {
        let mut out = vec![self.top.moduli().to_vec()];
        if let Some(d) = self.derived() {
            out.extend(d.layer_invariants());
        }
        out
    }

    pub fn presentation(&self) -> &ConstructivePresentation {
        &self.presentation
    }

    pub fn membership(&self) -> &ConstructiveMembership {
        &self.membership
    }
}

/// Solvable data for a group of order dividing `n`.
pub fn solvable_data(group: &Group, n: &FactoredInteger, bound: usize) -> Result<SolvableData> {
    let limit = (64 - n.value().leading_zeros()).max(1);
    build(group, n, bound, 0, limit)
}

fn build(
    group: &Group,
    n: &FactoredInteger,
    bound: usize,
    depth: u32,
    limit: u32,
) -> Result<SolvableData> {
    if depth > limit {
        return Err(Error::NotSolvable);
    }
    let (h, h_words) = derived_subgroup_words(group, bound)?;
    let mut trivial = true;
    for x in h.generators() {
        if !group.is_identity(x)? {
            trivial = false;
            break;
        }
    }
    if trivial {
        let top = abel_recog_2(group, n)?;
        return Ok(SolvableData {
            group: group.clone(),
            n: n.clone(),
            bound,
            presentation: presentation_from_iso(&top),
            membership: membership_from_iso(&top),
            top,
            derived: None,
        });
    }
    let span = enumerate_span(&h, bound)?;
    let mut stalled = true;
    for g in group.generators() {
        if !span.contains(g)? {
            stalled = false;
            break;
        }
    }
    if stalled {
        return Err(Error::NotSolvable);
    }
    drop(span);
    let sub = build(&h, n, bound, depth + 1, limit)?;
    let sub_mem = sub.membership.clone();
    let quotient = group.with_congruence(Congruence::new(move |x| sub_mem.contains(x).ok()));
    let top = abel_recog_2(&quotient, n)?;
    let membership = stitch_membership(group, &top, &sub.membership, &h_words);
    let presentation = stitch_presentation(group, &top, &sub.presentation)?;
    Ok(SolvableData {
        group: group.clone(),
        n: n.clone(),
        bound,
        top,
        derived: Some((Box::new(sub), h_words)),
        presentation,
        membership,
    })
}

/// `x = x'·y` with `x'` read off the quotient and `y ∈ H` tested below.
fn stitch_membership(
    group: &Group,
    top: &TwoWayIso,
    sub: &ConstructiveMembership,
    h_words: &[Slp],
) -> ConstructiveMembership {
    let g = group.clone();
    let top = top.clone();
    let sub = sub.clone();
    let h_words = h_words.to_vec();
    ConstructiveMembership::new(group, move |x| {
        let Some(t) = top.inverse(x)? else {
            return Ok(None);
        };
        let xq = top.forward(&t).expect("tuple length matches");
        let wq = top
            .one_way()
            .forward_word(&t)
            .expect("tuple length matches");
        let y = g.mul(&g.inv(&xq), x);
        let Some(wh) = sub.test(&y)? else {
            return Ok(None);
        };
        Ok(Some(wq.mul(&wh.substitute(&h_words)?)))
    })
}

fn shift(w: &Slp, offset: usize, count: usize) -> Result<Slp> {
    let images: Vec<Slp> = (0..count).map(|i| Slp::generator(offset + i)).collect();
    w.substitute(&images)
}

/// Extension of a presentation of `H` by one of `G/H`.
///
/// Symbols are those of `G/H` followed by those of `H`. Relators: each
/// quotient relator times the inverse of its rewrite in `H`, the relators of
/// `H`, and each conjugate `x⁻¹yx` times the inverse of its rewrite.
fn stitch_presentation(
    group: &Group,
    top: &TwoWayIso,
    sub: &ConstructivePresentation,
) -> Result<ConstructivePresentation> {
    let upper = presentation_from_iso(top);
    let q = upper.symbols().len();
    let hn = sub.symbols().len();
    let rewrite = |e: &Element| -> Result<Slp> {
        let w = sub.psi(e)?.ok_or_else(|| {
            Error::Precondition("relator value outside the derived subgroup".into())
        })?;
        shift(&w, q, hn)
    };
    let mut relators = Vec::new();
    for r in upper.relators() {
        let value = upper.phi(r)?;
        relators.push(r.mul(&rewrite(&value)?.inv()));
    }
    for r in sub.relators() {
        relators.push(shift(r, q, hn)?);
    }
    for (i, x) in upper.symbols().iter().enumerate() {
        for (j, y) in sub.symbols().iter().enumerate() {
            let c = group.conj(y, x);
            let word = Slp::generator(i).conj(&Slp::generator(q + j));
            relators.push(word.mul(&rewrite(&c)?.inv()));
        }
    }
    let mut symbols = upper.symbols().to_vec();
    symbols.extend(sub.symbols().iter().cloned());
    let g = group.clone();
    let sub = sub.clone();
    Ok(ConstructivePresentation::new(
        group,
        symbols,
        relators,
        move |x| {
            let Some(w1) = upper.psi(x)? else {
                return Ok(None);
            };
            let e1 = upper.phi(&w1)?;
            let rest = g.mul(&g.inv(&e1), x);
            let Some(w2) = sub.psi(&rest)? else {
                return Ok(None);
            };
            Ok(Some(w1.mul(&shift(&w2, q, hn)?)))
        },
    ))
}

/// Generators of the unique Sylow `p`-subgroup, or `None` if it is not unique.
///
/// The Sylow subgroup of `[G,G]` is found recursively; the top layer
/// contributes `gₓ^k` for each basis representative `gₓ`, where `k` is the
/// `p′`-part of `n`. The candidate is accepted when its span is a `p`-group
/// normalised by every generator of `G`.
pub fn normal_sylow(data: &SolvableData, p: u64) -> Result<Option<Vec<Element>>> {
    let g = &data.group;
    let mut gens = Vec::new();
    if let Some(sub) = data.derived() {
        let Some(below) = normal_sylow(sub, p)? else {
            return Ok(None);
        };
        for x in below {
            if !g.is_identity(&x)? {
                gens.push(x);
            }
        }
    }
    let k = data.n.value() / data.n.p_part(p);
    for x in data.top.one_way().images() {
        let h = g.pow(x, k);
        if !g.is_identity(&h)? {
            gens.push(h);
        }
    }
    if gens.is_empty() {
        return Ok(Some(vec![g.identity()]));
    }
    let span = enumerate_span(&g.subgroup(gens.clone()), data.bound)?;
    let mut m = span.len();
    while m % p as usize == 0 {
        m /= p as usize;
    }
    if m != 1 {
        return Ok(None);
    }
    for s in g.generators() {
        for h in &gens {
            if !span.contains(&g.conj(h, s))? {
                return Ok(None);
            }
        }
    }
    Ok(Some(gens))
}

/// Generators of a cyclic normal subgroup `B` from a presentation of `G/B`:
/// the relators evaluated at the lifted symbols, together with
/// `s⁻¹·(sψφ)` for each generator `s` of `G`.
pub fn cyclic_normal_generators(
    group: &Group,
    pres: &ConstructivePresentation,
) -> Result<Vec<Element>> {
    let outside = || Error::Precondition("a generator is not in the presented group".into());
    let mut lifted = Vec::with_capacity(pres.symbols().len());
    for x in pres.symbols() {
        let w = pres.psi(x)?.ok_or_else(outside)?;
        lifted.push(pres.phi(&w)?);
    }
    let mut out = Vec::new();
    for r in pres.relators() {
        out.push(r.evaluate(group, &lifted)?);
    }
    for s in group.generators() {
        let w = pres.psi(s)?.ok_or_else(outside)?;
        out.push(group.mul(&group.inv(s), &pres.phi(&w)?));
    }
    let mut gens = Vec::new();
    for x in out {
        if !group.is_identity(&x)? {
            gens.push(x);
        }
    }
    if gens.is_empty() {
        gens.push(group.identity());
    }
    Ok(gens)
}
