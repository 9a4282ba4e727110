//! Divisor lookup over leading monomials.

use crate::monomial::{Monomial, MAX_VARS};

#[derive(Clone, Debug, Default)]
struct Node {
    /// Children keyed by the exponent of the variable at this depth, ascending.
    children: Vec<(u8, Node)>,
    items: Vec<usize>,
}

/// A trie keyed by (component, exponent vector). Lookups visit children in
/// ascending exponent order, so results are deterministic.
#[derive(Clone, Debug, Default)]
pub struct DivisorTrie {
    nvars: usize,
    roots: Vec<Node>,
    len: usize,
}

impl DivisorTrie {
    pub fn new(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS);
        DivisorTrie { nvars, roots: Vec::new(), len: 0 }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn insert(&mut self, m: &Monomial, idx: usize) {
        let c = m.comp();
        if self.roots.len() <= c {
            self.roots.resize_with(c + 1, Node::default);
        }
        let mut node = &mut self.roots[c];
        for v in 0..self.nvars {
            let e = m.exp(v) as u8;
            let pos = match node.children.binary_search_by(|(k, _)| k.cmp(&e)) {
                Ok(p) => p,
                Err(p) => {
                    node.children.insert(p, (e, Node::default()));
                    p
                }
            };
            node = &mut node.children[pos].1;
        }
        node.items.push(idx);
        self.len += 1;
    }

    pub fn find_divisor(&self, m: &Monomial) -> Option<usize> {
        let root = self.roots.get(m.comp())?;
        Self::first(root, 0, self.nvars, m)
    }

    fn first(node: &Node, depth: usize, nvars: usize, m: &Monomial) -> Option<usize> {
        if depth == nvars {
            return node.items.first().copied();
        }
        let e = m.exp(depth) as u8;
        for (k, child) in &node.children {
            if *k > e {
                break;
            }
            if let Some(i) = Self::first(child, depth + 1, nvars, m) {
                return Some(i);
            }
        }
        None
    }

    /// True when some stored monomial divides `m`.
    pub fn has_divisor(&self, m: &Monomial) -> bool {
        match self.roots.get(m.comp()) {
            Some(root) => Self::any(root, 0, self.nvars, m),
            None => false,
        }
    }

    fn any(node: &Node, depth: usize, nvars: usize, m: &Monomial) -> bool {
        if depth == nvars {
            return !node.items.is_empty();
        }
        let e = m.exp(depth) as u8;
        for (k, child) in &node.children {
            if *k > e {
                break;
            }
            if Self::any(child, depth + 1, nvars, m) {
                return true;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_divisors() {
        let mut t = DivisorTrie::new(3);
        let a = Monomial::from_exponents(&[1, 1, 0]).unwrap();
        let b = Monomial::from_exponents(&[0, 1, 0]).unwrap();
        t.insert(&a, 4);
        t.insert(&b, 7);
        let q = Monomial::from_exponents(&[2, 1, 5]).unwrap();
        assert!(matches!(t.find_divisor(&q), Some(4) | Some(7)));
        let q2 = Monomial::from_exponents(&[0, 3, 0]).unwrap();
        assert_eq!(t.find_divisor(&q2), Some(7));
        assert!(!t.has_divisor(&Monomial::from_exponents(&[5, 0, 5]).unwrap()));
        assert!(!t.has_divisor(&q.with_comp(1)));
    }
}
