use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use super::{Element, Group};
use crate::{Error, Result};

/// Straight-line program over generator indices.
///
/// Nodes are shared, so an SLP is a DAG: product replacement and presentation
/// stitching both reuse sub-programs heavily. Evaluation visits each distinct
/// node once.
#[derive(Clone)]
pub struct Slp(Arc<Node>);

enum Node {
    Gen(usize),
    Identity,
    Product(Slp, Slp),
    Inverse(Slp),
    Power(Slp, i64),
}

fn leaf() -> Arc<Node> {
    static LEAF: OnceLock<Arc<Node>> = OnceLock::new();
    Arc::clone(LEAF.get_or_init(|| Arc::new(Node::Identity)))
}

// Long product chains would otherwise drop recursively.
impl Drop for Slp {
    fn drop(&mut self) {
        fn take(node: &mut Node, stack: &mut Vec<Arc<Node>>) {
            match node {
                Node::Product(a, b) => {
                    stack.push(std::mem::replace(&mut a.0, leaf()));
                    stack.push(std::mem::replace(&mut b.0, leaf()));
                }
                Node::Inverse(a) | Node::Power(a, _) => {
                    stack.push(std::mem::replace(&mut a.0, leaf()))
                }
                Node::Gen(_) | Node::Identity => {}
            }
        }
        let mut stack = Vec::new();
        if let Some(node) = Arc::get_mut(&mut self.0) {
            take(node, &mut stack);
        }
        while let Some(mut arc) = stack.pop() {
            if let Some(node) = Arc::get_mut(&mut arc) {
                take(node, &mut stack);
            }
        }
    }
}

/// Target structure an SLP can be folded into.
pub(crate) trait SlpAlgebra {
    type Value: Clone;
    fn generator(&self, index: usize) -> Result<Self::Value>;
    fn identity(&self) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn inv(&self, a: &Self::Value) -> Self::Value;
    fn pow(&self, a: &Self::Value, e: i64) -> Self::Value;
}

struct GroupAlgebra<'a> {
    group: &'a Group,
    images: &'a [Element],
}

impl SlpAlgebra for GroupAlgebra<'_> {
    type Value = Element;

    fn generator(&self, index: usize) -> Result<Element> {
        self.images
            .get(index)
            .cloned()
            .ok_or(Error::IndexOutOfRange {
                index,
                count: self.images.len(),
            })
    }

    fn identity(&self) -> Element {
        self.group.identity()
    }

    fn mul(&self, a: &Element, b: &Element) -> Element {
        self.group.mul(a, b)
    }

    fn inv(&self, a: &Element) -> Element {
        self.group.inv(a)
    }

    fn pow(&self, a: &Element, e: i64) -> Element {
        self.group.pow_signed(a, e)
    }
}

struct Substitution<'a> {
    images: &'a [Slp],
}

impl SlpAlgebra for Substitution<'_> {
    type Value = Slp;

    fn generator(&self, index: usize) -> Result<Slp> {
        self.images
            .get(index)
            .cloned()
            .ok_or(Error::IndexOutOfRange {
                index,
                count: self.images.len(),
            })
    }

    fn identity(&self) -> Slp {
        Slp::identity()
    }

    fn mul(&self, a: &Slp, b: &Slp) -> Slp {
        a.mul(b)
    }

    fn inv(&self, a: &Slp) -> Slp {
        a.inv()
    }

    fn pow(&self, a: &Slp, e: i64) -> Slp {
        a.pow(e)
    }
}

impl Slp {
    pub fn generator(index: usize) -> Self {
        Slp(Arc::new(Node::Gen(index)))
    }

    pub fn identity() -> Self {
        Slp(leaf())
    }

    pub fn is_identity_node(&self) -> bool {
        matches!(*self.0, Node::Identity)
    }

    pub fn mul(&self, other: &Slp) -> Slp {
        if self.is_identity_node() {
            return other.clone();
        }
        if other.is_identity_node() {
            return self.clone();
        }
        Slp(Arc::new(Node::Product(self.clone(), other.clone())))
    }

    pub fn inv(&self) -> Slp {
        match &*self.0 {
            Node::Identity => self.clone(),
            Node::Inverse(a) => a.clone(),
            _ => Slp(Arc::new(Node::Inverse(self.clone()))),
        }
    }

    pub fn pow(&self, e: i64) -> Slp {
        match e {
            0 => Slp::identity(),
            1 => self.clone(),
            -1 => self.inv(),
            _ if self.is_identity_node() => self.clone(),
            _ => Slp(Arc::new(Node::Power(self.clone(), e))),
        }
    }

    /// `self⁻¹ · other · self`.
    pub fn conj(&self, other: &Slp) -> Slp {
        self.inv().mul(other).mul(self)
    }

    /// `a⁻¹ b⁻¹ a b`.
    pub fn commutator(a: &Slp, b: &Slp) -> Slp {
        a.inv().mul(&b.inv()).mul(a).mul(b)
    }

    /// Product of `base_i ^ exps_i` in order.
    pub fn word(bases: &[Slp], exps: &[u64]) -> Slp {
        bases
            .iter()
            .zip(exps)
            .filter(|(_, &e)| e != 0)
            .fold(Slp::identity(), |acc, (b, &e)| acc.mul(&b.pow(e as i64)))
    }

    /// Nodes in post-order, each distinct node once.
    fn topo(&self) -> Vec<&Slp> {
        let mut order = Vec::new();
        let mut seen = std::collections::HashSet::new();
        let mut stack: Vec<(&Slp, bool)> = vec![(self, false)];
        while let Some((s, expanded)) = stack.pop() {
            let key = Arc::as_ptr(&s.0);
            if expanded {
                order.push(s);
                continue;
            }
            if !seen.insert(key) {
                continue;
            }
            stack.push((s, true));
            match &*s.0 {
                Node::Product(a, b) => {
                    stack.push((b, false));
                    stack.push((a, false));
                }
                Node::Inverse(a) | Node::Power(a, _) => stack.push((a, false)),
                Node::Gen(_) | Node::Identity => {}
            }
        }
        order
    }

    pub(crate) fn fold<A: SlpAlgebra>(&self, alg: &A) -> Result<A::Value> {
        let mut memo: HashMap<*const Node, A::Value> = HashMap::new();
        let get = |memo: &HashMap<*const Node, A::Value>, s: &Slp| memo[&Arc::as_ptr(&s.0)].clone();
        for s in self.topo() {
            let v = match &*s.0 {
                Node::Gen(i) => alg.generator(*i)?,
                Node::Identity => alg.identity(),
                Node::Product(a, b) => alg.mul(&get(&memo, a), &get(&memo, b)),
                Node::Inverse(a) => alg.inv(&get(&memo, a)),
                Node::Power(a, e) => alg.pow(&get(&memo, a), *e),
            };
            memo.insert(Arc::as_ptr(&s.0), v);
        }
        Ok(get(&memo, self))
    }

    /// Evaluate with generator `i` replaced by `images[i]`.
    pub fn evaluate(&self, group: &Group, images: &[Element]) -> Result<Element> {
        self.fold(&GroupAlgebra { group, images })
    }

    /// Replace generator `i` by the program `images[i]`.
    pub fn substitute(&self, images: &[Slp]) -> Result<Slp> {
        self.fold(&Substitution { images })
    }

    /// Largest generator index referenced, if any.
    pub fn max_index(&self) -> Option<usize> {
        self.topo()
            .into_iter()
            .filter_map(|s| match &*s.0 {
                Node::Gen(i) => Some(*i),
                _ => None,
            })
            .max()
    }

    /// Number of distinct nodes.
    pub fn len(&self) -> usize {
        self.topo().len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Debug for Slp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            Node::Gen(i) => write!(f, "g{i}"),
            Node::Identity => write!(f, "1"),
            Node::Product(a, b) => write!(f, "({a:?}*{b:?})"),
            Node::Inverse(a) => write!(f, "{a:?}^-1"),
            Node::Power(a, e) => write!(f, "{a:?}^{e}"),
        }
    }
}
