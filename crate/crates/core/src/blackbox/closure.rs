use std::collections::{HashSet, VecDeque};

use super::{Congruence, Element, Group, Slp};
use crate::{Error, Result};

/// Default cap on enumerated span sizes.
pub const DEFAULT_ENUMERATION_BOUND: usize = 1_000_000;

/// The elements of a subgroup, one representative per congruence class.
#[derive(Clone, Debug)]
pub struct Span {
    group: Group,
    elements: Vec<Element>,
    index: Option<HashSet<Element>>,
}

impl Span {
    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: &Element) -> Result<bool> {
        match &self.index {
            Some(set) => Ok(set.contains(x)),
            None => {
                for e in &self.elements {
                    if self.group.eq(e, x)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
        }
    }
}

/// Breadth-first enumeration of `⟨group.generators()⟩`.
pub fn enumerate_span(group: &Group, bound: usize) -> Result<Span> {
    let id = group.identity();
    let gens: Vec<Element> = group
        .generators()
        .iter()
        .filter(|g| !matches!(group.is_identity(g), Ok(true)))
        .cloned()
        .collect();
    let mut elements = vec![id.clone()];
    let mut queue = VecDeque::from([id.clone()]);
    if group.has_canonical_keys() {
        let mut seen = HashSet::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = group.mul(&x, g);
                if seen.insert(y.clone()) {
                    if elements.len() >= bound {
                        return Err(Error::BoundExceeded(bound));
                    }
                    elements.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        return Ok(Span {
            group: group.clone(),
            elements,
            index: Some(seen),
        });
    }
    let mut span = Span {
        group: group.clone(),
        elements,
        index: None,
    };
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = group.mul(&x, g);
            if !span.contains(&y)? {
                if span.elements.len() >= bound {
                    return Err(Error::BoundExceeded(bound));
                }
                span.elements.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(span)
}

/// Generators of the normal closure of `⟨seeds⟩` in `group`.
pub fn normal_closure(group: &Group, seeds: &[Element], bound: usize) -> Result<Vec<Element>> {
    let tagged: Vec<(Element, Slp)> = seeds.iter().map(|s| (s.clone(), Slp::identity())).collect();
    Ok(normal_closure_words(group, &tagged, bound)?
        .into_iter()
        .map(|(x, _)| x)
        .collect())
}

/// [`normal_closure`] carrying a word for every generator: conjugates pick up
/// the word of the conjugating generator.
pub fn normal_closure_words(
    group: &Group,
    seeds: &[(Element, Slp)],
    bound: usize,
) -> Result<Vec<(Element, Slp)>> {
    let mut gens: Vec<(Element, Slp)> = Vec::new();
    for (s, w) in seeds {
        if !group.is_identity(s)? {
            gens.push((s.clone(), w.clone()));
        }
    }
    let mut checked = 0;
    while checked < gens.len() {
        let span = enumerate_span(
            &group.subgroup(gens.iter().map(|(x, _)| x.clone()).collect()),
            bound,
        )?;
        let mut added: Vec<(Element, Slp)> = Vec::new();
        for (h, hw) in &gens[checked..] {
            for (k, s) in group.generators().iter().enumerate() {
                let c = group.conj(h, s);
                if span.contains(&c)? {
                    continue;
                }
                let mut fresh = true;
                for (a, _) in &added {
                    if group.eq(a, &c)? {
                        fresh = false;
                        break;
                    }
                }
                if fresh {
                    added.push((c, Slp::generator(k).conj(hw)));
                }
            }
        }
        checked = gens.len();
        gens.extend(added);
    }
    if gens.is_empty() {
        gens.push((group.identity(), Slp::identity()));
    }
    Ok(gens)
}

/// `[G, G]` as the normal closure of the generator commutators.
pub fn derived_subgroup(group: &Group, bound: usize) -> Result<Group> {
    Ok(derived_subgroup_words(group, bound)?.0)
}

/// [`derived_subgroup`] together with words for its generators over the
/// generators of `group`.
pub fn derived_subgroup_words(group: &Group, bound: usize) -> Result<(Group, Vec<Slp>)> {
    let g = group.generators();
    let mut seeds = Vec::new();
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            let c = group.commutator(&g[i], &g[j]);
            if !group.is_identity(&c)? {
                seeds.push((c, Slp::commutator(&Slp::generator(i), &Slp::generator(j))));
            }
        }
    }
    let (elems, words) = normal_closure_words(group, &seeds, bound)?
        .into_iter()
        .unzip();
    Ok((group.subgroup(elems), words))
}

/// `G/N`, where `N` is given by its membership predicate.
pub fn quotient(group: &Group, n: Congruence) -> Group {
    group.with_congruence(n)
}
