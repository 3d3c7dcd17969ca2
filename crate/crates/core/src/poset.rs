//! Finite posets, the rooted-tree refinement, and the `p < q` text format.
//!
//! Elements are identified by short ASCII names and indexed by [`ElemId`] in
//! first-appearance order. The strict order is stored as a dense boolean
//! matrix; posets here have at most a few dozen elements.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Guard for the exponential order-ideal count.
pub const MAX_IDEAL_COUNT_SIZE: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ElemId(pub u16);

impl ElemId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    names: Vec<String>,
    index: HashMap<String, ElemId>,
    covers: Vec<(ElemId, ElemId)>,
    less: Vec<Vec<bool>>,
}

/// JSON shape of an exported poset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub elements: Vec<String>,
    pub covers: Vec<[String; 2]>,
    pub root: Option<String>,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric())
}

impl Poset {
    /// Builds a poset from element names and declared strict relations
    /// `(p, q)` meaning `p < q`. Relations need not be covers.
    pub fn from_relations(names: Vec<String>, relations: &[(usize, usize)]) -> Result<Poset> {
        let n = names.len();
        if n > u16::MAX as usize {
            return Err(Error::SizeLimit { size: n, limit: u16::MAX as usize });
        }
        let mut index = HashMap::with_capacity(n);
        for (i, name) in names.iter().enumerate() {
            if !valid_name(name) {
                return Err(Error::Parse { line: 0, message: format!("invalid element name `{name}`") });
            }
            if index.insert(name.clone(), ElemId(i as u16)).is_some() {
                return Err(Error::Parse { line: 0, message: format!("duplicate element `{name}`") });
            }
        }
        let mut less = vec![vec![false; n]; n];
        for &(p, q) in relations {
            if p >= n || q >= n {
                return Err(Error::Index(format!("relation ({p}, {q}) on {n} elements")));
            }
            less[p][q] = true;
        }
        // Warshall closure.
        for k in 0..n {
            for i in 0..n {
                if less[i][k] {
                    let row = less[k].clone();
                    for (cell, reach) in less[i].iter_mut().zip(row) {
                        *cell |= reach;
                    }
                }
            }
        }
        if let Some(i) = (0..n).find(|&i| less[i][i]) {
            return Err(Error::Cycle(names[i].clone()));
        }
        let mut covers = Vec::new();
        for p in 0..n {
            for q in 0..n {
                if less[p][q] && !(0..n).any(|r| less[p][r] && less[r][q]) {
                    covers.push((ElemId(p as u16), ElemId(q as u16)));
                }
            }
        }
        Ok(Poset { names, index, covers, less })
    }

    /// Parses the line-oriented DSL: `p < q` cover declarations, `elem p`
    /// for isolated elements, `#` comments and blank lines.
    pub fn parse(text: &str) -> Result<Poset> {
        let mut names: Vec<String> = Vec::new();
        let mut seen: HashMap<String, usize> = HashMap::new();
        let mut relations = Vec::new();
        let mut intern = |name: &str, line: usize| -> Result<usize> {
            if !valid_name(name) {
                return Err(Error::Parse { line, message: format!("invalid element name `{name}`") });
            }
            Ok(*seen.entry(name.to_string()).or_insert_with(|| {
                names.push(name.to_string());
                names.len() - 1
            }))
        };
        for (lineno, raw) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("elem ") {
                let name = rest.trim();
                if name.split_whitespace().count() != 1 {
                    return Err(Error::Parse { line: line_no, message: format!("expected `elem <name>`, got `{line}`") });
                }
                intern(name, line_no)?;
                continue;
            }
            let parts: Vec<&str> = line.split('<').map(str::trim).collect();
            if parts.len() != 2 {
                return Err(Error::Parse { line: line_no, message: format!("expected `p < q`, got `{line}`") });
            }
            let p = intern(parts[0], line_no)?;
            let q = intern(parts[1], line_no)?;
            relations.push((p, q));
        }
        Poset::from_relations(names, &relations)
    }

    /// The chain `e0 < e1 < ... ` on the given names.
    pub fn chain(names: &[&str]) -> Result<Poset> {
        let rel: Vec<_> = (1..names.len()).map(|i| (i - 1, i)).collect();
        Poset::from_relations(names.iter().map(|s| s.to_string()).collect(), &rel)
    }

    /// Inverse of [`Poset::to_json`]. A declared root must be the actual
    /// root.
    pub fn from_json(json: &PosetJson) -> Result<Poset> {
        let lookup = |n: &str| {
            json.elements.iter().position(|e| e == n).ok_or_else(|| Error::UnknownElement(n.to_string()))
        };
        let rel = json.covers.iter().map(|[p, q]| Ok((lookup(p)?, lookup(q)?))).collect::<Result<Vec<_>>>()?;
        let poset = Poset::from_relations(json.elements.clone(), &rel)?;
        if let Some(root) = &json.root {
            let tree = poset.as_rooted_tree()?;
            if tree.name(tree.root()) != root {
                return Err(Error::NotATree { element: root.clone(), reason: "declared root is not the minimum".into() });
            }
        }
        Ok(poset)
    }

    /// Reads either the DSL or the JSON form, chosen by the first
    /// non-blank character.
    pub fn parse_any(text: &str) -> Result<Poset> {
        if text.trim_start().starts_with('{') {
            let json: PosetJson =
                serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), message: e.to_string() })?;
            Poset::from_json(&json)
        } else {
            Poset::parse(text)
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = ElemId> + '_ {
        (0..self.names.len()).map(|i| ElemId(i as u16))
    }

    pub fn name(&self, e: ElemId) -> &str {
        &self.names[e.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn id(&self, name: &str) -> Result<ElemId> {
        self.index.get(name).copied().ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn lt(&self, p: ElemId, q: ElemId) -> bool {
        self.less[p.index()][q.index()]
    }

    pub fn leq(&self, p: ElemId, q: ElemId) -> bool {
        p == q || self.lt(p, q)
    }

    pub fn comparable(&self, p: ElemId, q: ElemId) -> bool {
        self.leq(p, q) || self.leq(q, p)
    }

    /// Cover pairs `(p, q)` with `q` covering `p`, sorted by index.
    pub fn covers(&self) -> &[(ElemId, ElemId)] {
        &self.covers
    }

    pub fn lower_covers(&self, q: ElemId) -> Vec<ElemId> {
        self.covers.iter().filter(|c| c.1 == q).map(|c| c.0).collect()
    }

    pub fn upper_covers(&self, p: ElemId) -> Vec<ElemId> {
        self.covers.iter().filter(|c| c.0 == p).map(|c| c.1).collect()
    }

    pub fn minimal_elements(&self) -> Vec<ElemId> {
        self.elements().filter(|&q| !self.elements().any(|p| self.lt(p, q))).collect()
    }

    /// `J(< p)`: elements strictly below `p`.
    pub fn strict_ideal_below(&self, p: ElemId) -> BTreeSet<ElemId> {
        self.elements().filter(|&r| self.lt(r, p)).collect()
    }

    /// `F(> p)`: elements strictly above `p`.
    pub fn strict_filter_above(&self, p: ElemId) -> BTreeSet<ElemId> {
        self.elements().filter(|&q| self.lt(p, q)).collect()
    }

    pub fn ideal_below(&self, p: ElemId) -> BTreeSet<ElemId> {
        self.elements().filter(|&r| self.leq(r, p)).collect()
    }

    pub fn filter_above(&self, p: ElemId) -> BTreeSet<ElemId> {
        self.elements().filter(|&q| self.leq(p, q)).collect()
    }

    /// All pairs `(p, q)` with `p <= q`, in linear-extension order of `p`
    /// then of `q`.
    pub fn comparable_pairs(&self) -> Vec<(ElemId, ElemId)> {
        let ext = self.linear_extension();
        let mut out = Vec::new();
        for &p in &ext {
            for &q in &ext {
                if self.leq(p, q) {
                    out.push((p, q));
                }
            }
        }
        out
    }

    /// Number of order ideals (downward-closed subsets, including the
    /// empty one).
    pub fn count_order_ideals(&self) -> Result<u64> {
        if self.len() > MAX_IDEAL_COUNT_SIZE {
            return Err(Error::SizeLimit { size: self.len(), limit: MAX_IDEAL_COUNT_SIZE });
        }
        let ext = self.linear_extension();
        let mut chosen = vec![false; self.len()];
        Ok(self.count_ideals_from(&ext, 0, &mut chosen))
    }

    fn count_ideals_from(&self, ext: &[ElemId], at: usize, chosen: &mut [bool]) -> u64 {
        let Some(&p) = ext.get(at) else {
            return 1;
        };
        // Excluding p is always allowed because later elements that need it
        // will see it missing.
        let mut total = self.count_ideals_from(ext, at + 1, chosen);
        if self.lower_covers(p).iter().all(|r| chosen[r.index()]) {
            chosen[p.index()] = true;
            total += self.count_ideals_from(ext, at + 1, chosen);
            chosen[p.index()] = false;
        }
        total
    }

    /// Topological order with ties broken by element name.
    pub fn linear_extension(&self) -> Vec<ElemId> {
        let n = self.len();
        let mut indeg: Vec<usize> = self.elements().map(|q| self.lower_covers(q).len()).collect();
        let mut ready: BinaryHeap<Reverse<(&str, ElemId)>> = self
            .elements()
            .filter(|q| indeg[q.index()] == 0)
            .map(|q| Reverse((self.name(q), q)))
            .collect();
        let mut out = Vec::with_capacity(n);
        while let Some(Reverse((_, p))) = ready.pop() {
            out.push(p);
            for q in self.upper_covers(p) {
                indeg[q.index()] -= 1;
                if indeg[q.index()] == 0 {
                    ready.push(Reverse((self.name(q), q)));
                }
            }
        }
        out
    }

    pub fn as_rooted_tree(&self) -> Result<RootedTree> {
        RootedTree::new(self.clone())
    }

    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            elements: self.names.clone(),
            covers: self
                .covers
                .iter()
                .map(|&(p, q)| [self.name(p).to_string(), self.name(q).to_string()])
                .collect(),
            root: self.as_rooted_tree().ok().map(|t| self.name(t.root()).to_string()),
        }
    }

    /// Canonical DSL text: isolated elements first as `elem` lines, then
    /// covers.
    pub fn to_dsl(&self) -> String {
        let mut out = String::new();
        for e in self.elements() {
            if self.lower_covers(e).is_empty() && self.upper_covers(e).is_empty() {
                out.push_str(&format!("elem {}\n", self.name(e)));
            }
        }
        for &(p, q) in &self.covers {
            out.push_str(&format!("{} < {}\n", self.name(p), self.name(q)));
        }
        out
    }
}

impl fmt::Display for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_dsl())
    }
}

/// A poset whose Hasse diagram is a tree with the root at the bottom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    poset: Poset,
    root: ElemId,
    parent: Vec<Option<ElemId>>,
    children: Vec<Vec<ElemId>>,
    ext: Vec<ElemId>,
    rank: Vec<usize>,
}

impl RootedTree {
    pub fn new(poset: Poset) -> Result<RootedTree> {
        if poset.is_empty() {
            return Err(Error::NotATree { element: String::new(), reason: "empty poset".into() });
        }
        let mut parent = vec![None; poset.len()];
        for q in poset.elements() {
            let lower = poset.lower_covers(q);
            match lower.len() {
                0 | 1 => parent[q.index()] = lower.first().copied(),
                _ => {
                    return Err(Error::NotATree {
                        element: poset.name(q).to_string(),
                        reason: format!("two parents ({} and {})", poset.name(lower[0]), poset.name(lower[1])),
                    })
                }
            }
        }
        let minimal = poset.minimal_elements();
        if minimal.len() > 1 {
            return Err(Error::NotATree {
                element: poset.name(minimal[1]).to_string(),
                reason: format!("multiple minimal elements ({} and {})", poset.name(minimal[0]), poset.name(minimal[1])),
            });
        }
        let root = minimal[0];
        let ext = poset.linear_extension();
        let mut rank = vec![0; poset.len()];
        for (i, e) in ext.iter().enumerate() {
            rank[e.index()] = i;
        }
        let mut children = vec![Vec::new(); poset.len()];
        for &q in &ext {
            if let Some(p) = parent[q.index()] {
                children[p.index()].push(q);
            }
        }
        Ok(RootedTree { poset, root, parent, children, ext, rank })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn root(&self) -> ElemId {
        self.root
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn name(&self, e: ElemId) -> &str {
        self.poset.name(e)
    }

    pub fn id(&self, name: &str) -> Result<ElemId> {
        self.poset.id(name)
    }

    pub fn leq(&self, p: ElemId, q: ElemId) -> bool {
        self.poset.leq(p, q)
    }

    pub fn parent(&self, p: ElemId) -> Option<ElemId> {
        self.parent[p.index()]
    }

    /// Children in linear-extension order.
    pub fn children(&self, p: ElemId) -> &[ElemId] {
        &self.children[p.index()]
    }

    /// Siblings of `p` other than `p`, in linear-extension order.
    pub fn siblings(&self, p: ElemId) -> Vec<ElemId> {
        match self.parent(p) {
            Some(a) => self.children(a).iter().copied().filter(|&c| c != p).collect(),
            None => Vec::new(),
        }
    }

    pub fn are_siblings(&self, p: ElemId, q: ElemId) -> bool {
        p != q && self.parent(p).is_some() && self.parent(p) == self.parent(q)
    }

    /// Elements in linear-extension order.
    pub fn linear_extension(&self) -> &[ElemId] {
        &self.ext
    }

    /// Position of `p` in the linear extension.
    pub fn rank(&self, p: ElemId) -> usize {
        self.rank[p.index()]
    }

    /// Path from the root to `p`, inclusive.
    pub fn ancestors(&self, p: ElemId) -> Vec<ElemId> {
        let mut path = vec![p];
        let mut cur = p;
        while let Some(a) = self.parent(cur) {
            path.push(a);
            cur = a;
        }
        path.reverse();
        path
    }

    /// Deepest common ancestor.
    pub fn meet(&self, p: ElemId, q: ElemId) -> ElemId {
        let ap = self.ancestors(p);
        let aq = self.ancestors(q);
        let common = ap.iter().zip(&aq).take_while(|(x, y)| x == y).count();
        ap[common - 1]
    }

    /// Length of the longest chain upward from `p`.
    pub fn depth(&self, p: ElemId) -> usize {
        self.children(p).iter().map(|&c| 1 + self.depth(c)).max().unwrap_or(0)
    }

    /// The chain `a = x0 < x1 < ... < xk = b`.
    pub fn chain_between(&self, a: ElemId, b: ElemId) -> Result<Vec<ElemId>> {
        if !self.leq(a, b) {
            return Err(Error::NotComparable(self.name(a).into(), self.name(b).into()));
        }
        let path = self.ancestors(b);
        let start = path.iter().position(|&x| x == a).expect("a <= b lies on the root path of b");
        Ok(path[start..].to_vec())
    }

    /// Pairs `(q, p)` indexing the deformation parameters: `p` non-root and
    /// `meet(q, p) = parent(p)`. Ordered by `p`, then `q`, along the linear
    /// extension.
    pub fn parameter_pairs(&self) -> Vec<(ElemId, ElemId)> {
        let mut out = Vec::new();
        for &p in &self.ext {
            let Some(a) = self.parent(p) else { continue };
            for &q in &self.ext {
                if self.meet(q, p) == a {
                    out.push((q, p));
                }
            }
        }
        out
    }
}

/// All rooted trees on `n` nodes up to isomorphism. Nodes are named
/// `a, b, c, ...` in breadth-first order with children sorted canonically.
pub fn rooted_trees(n: usize) -> Vec<RootedTree> {
    assert!((1..=26).contains(&n), "rooted_trees supports 1..=26 nodes");
    let mut shapes: BTreeSet<String> = BTreeSet::new();
    let mut out = Vec::new();
    // Every rooted tree arises from a parent array with parent[i] < i.
    let mut parents = vec![0usize; n];
    loop {
        let code = canonical_code(&parents, 0);
        if shapes.insert(code) {
            out.push(tree_from_parents(&parents));
        }
        // Advance the mixed-radix counter over parents[1..].
        let mut i = n;
        loop {
            if i <= 1 {
                return out;
            }
            i -= 1;
            if parents[i] + 1 < i {
                parents[i] += 1;
                for p in parents.iter_mut().skip(i + 1) {
                    *p = 0;
                }
                break;
            }
        }
    }
}

fn kids(parents: &[usize], v: usize) -> Vec<usize> {
    (1..parents.len()).filter(|&i| parents[i] == v).collect()
}

fn canonical_code(parents: &[usize], v: usize) -> String {
    let mut codes: Vec<String> = kids(parents, v).into_iter().map(|c| canonical_code(parents, c)).collect();
    codes.sort();
    format!("({})", codes.concat())
}

fn tree_from_parents(parents: &[usize]) -> RootedTree {
    let n = parents.len();
    let mut order = vec![0usize];
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        let mut ks = kids(parents, v);
        ks.sort_by_key(|&c| canonical_code(parents, c));
        order.extend(ks);
    }
    let mut label = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        label[v] = i;
    }
    let names: Vec<String> = (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    let rel: Vec<(usize, usize)> = (1..n).map(|v| (label[parents[v]], label[v])).collect();
    Poset::from_relations(names, &rel)
        .and_then(RootedTree::new)
        .expect("parent arrays describe rooted trees")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(p: &Poset, names: &[&str]) -> BTreeSet<ElemId> {
        names.iter().map(|n| p.id(n).unwrap()).collect()
    }

    fn example66() -> Poset {
        Poset::parse("a < c\na < d\nb < c\nb < d\nc < e\nd < e\n").unwrap()
    }

    #[test]
    fn json_round_trip() {
        let p = example66();
        let text = serde_json::to_string(&p.to_json()).unwrap();
        assert_eq!(Poset::parse_any(&text).unwrap(), p);
        let t = Poset::parse("a < b\na < c").unwrap();
        assert_eq!(Poset::parse_any(&serde_json::to_string(&t.to_json()).unwrap()).unwrap(), t);
        let bad = r#"{"elements":["a","b"],"covers":[["a","b"]],"root":"b"}"#;
        assert!(matches!(Poset::parse_any(bad), Err(Error::NotATree { .. })));
        let unknown = r#"{"elements":["a"],"covers":[["a","z"]],"root":null}"#;
        assert!(matches!(Poset::parse_any(unknown), Err(Error::UnknownElement(_))));
        assert!(matches!(Poset::parse_any("{ nope"), Err(Error::Parse { .. })));
    }

    #[test]
    fn parses_chain_and_star() {
        let p = Poset::parse("a < b\nb < c").unwrap();
        assert_eq!(p.names(), ["a", "b", "c"]);
        assert_eq!(p.covers().len(), 2);
        assert!(p.lt(p.id("a").unwrap(), p.id("c").unwrap()));

        let s = Poset::parse("a < b\na < c").unwrap();
        let t = s.as_rooted_tree().unwrap();
        assert_eq!(t.name(t.root()), "a");
        assert_eq!(t.children(t.root()).len(), 2);
    }

    #[test]
    fn cycle_and_malformed_lines_are_rejected() {
        assert!(matches!(Poset::parse("a < b\nb < a"), Err(Error::Cycle(_))));
        assert!(matches!(Poset::parse("a < a"), Err(Error::Cycle(_))));
        assert!(matches!(Poset::parse("a <"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(Poset::parse("# c\na < b < c"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(Poset::parse("1a < b"), Err(Error::Parse { .. })));
        assert!(matches!(Poset::parse("elem a b"), Err(Error::Parse { .. })));
    }

    #[test]
    fn duplicates_comments_and_redundant_relations() {
        let p = Poset::parse("# header\n\na < b\na < b   # again\nb < c\na < c\nelem z\n").unwrap();
        assert_eq!(p.names(), ["a", "b", "c", "z"]);
        // a < c is implied, so it is not a cover.
        assert_eq!(p.covers().len(), 2);
        assert_eq!(p.to_dsl(), "elem z\na < b\nb < c\n");
    }

    #[test]
    fn rooted_tree_detection() {
        let chain = Poset::chain(&["a", "b", "c", "d"]).unwrap().as_rooted_tree().unwrap();
        let d = chain.id("d").unwrap();
        assert_eq!(chain.name(chain.root()), "a");
        assert_eq!(chain.parent(d), Some(chain.id("c").unwrap()));

        let diamond = Poset::parse("a < c\na < d\nb < c").unwrap();
        match diamond.as_rooted_tree() {
            Err(Error::NotATree { element, .. }) => assert_eq!(element, "c"),
            other => panic!("expected NotATree, got {other:?}"),
        }
        let forest = Poset::parse("a < b\nc < d").unwrap();
        match forest.as_rooted_tree() {
            Err(Error::NotATree { element, .. }) => assert_eq!(element, "c"),
            other => panic!("expected NotATree, got {other:?}"),
        }
        let two_parents = Poset::parse("a < b\na < c\nb < d\nc < d").unwrap();
        match two_parents.as_rooted_tree() {
            Err(Error::NotATree { element, .. }) => assert_eq!(element, "d"),
            other => panic!("expected NotATree, got {other:?}"),
        }
        let single = Poset::parse("elem a").unwrap().as_rooted_tree().unwrap();
        assert_eq!(single.parent(single.root()), None);
        assert!(single.children(single.root()).is_empty());
    }

    #[test]
    fn meet_and_depth() {
        let star = Poset::parse("a < b\na < c").unwrap().as_rooted_tree().unwrap();
        let [a, b, c] = ["a", "b", "c"].map(|n| star.id(n).unwrap());
        assert_eq!(star.meet(b, c), a);
        let chain = Poset::chain(&["a", "b", "c", "d"]).unwrap().as_rooted_tree().unwrap();
        let [ca, cb, cc, cd] = ["a", "b", "c", "d"].map(|n| chain.id(n).unwrap());
        assert_eq!(chain.meet(cc, cb), cb);
        assert_eq!(chain.depth(ca), 3);
        assert_eq!(chain.depth(cd), 0);

        let app = Poset::parse("a < b\na < c\na < d\nd < e\ne < f\ne < g").unwrap().as_rooted_tree().unwrap();
        let [f, g, e] = ["f", "g", "e"].map(|n| app.id(n).unwrap());
        assert_eq!(app.meet(f, g), e);
        assert_eq!(app.depth(app.root()), 3);
        assert_eq!(app.depth(f), 0);
    }

    #[test]
    fn ideals_and_filters() {
        let p = example66();
        assert!(p.strict_ideal_below(p.id("a").unwrap()).is_empty());
        assert_eq!(p.strict_filter_above(p.id("a").unwrap()), ids(&p, &["c", "d", "e"]));
        assert_eq!(p.strict_ideal_below(p.id("c").unwrap()), ids(&p, &["a", "b"]));
        let chain = Poset::chain(&["a", "b", "c", "d"]).unwrap();
        let b = chain.id("b").unwrap();
        assert_eq!(chain.strict_ideal_below(b), ids(&chain, &["a"]));
        assert_eq!(chain.strict_filter_above(b), ids(&chain, &["c", "d"]));
    }

    /// Independent oracle: test every subset for downward closure.
    fn brute_force_ideals(p: &Poset) -> u64 {
        let n = p.len();
        (0u32..1 << n)
            .filter(|&mask| {
                p.elements().all(|q| {
                    mask & (1 << q.index()) == 0
                        || p.strict_ideal_below(q).iter().all(|r| mask & (1 << r.index()) != 0)
                })
            })
            .count() as u64
    }

    #[test]
    fn order_ideal_counts() {
        let star = Poset::parse("a < b\na < c").unwrap();
        assert_eq!(brute_force_ideals(&star), 5);
        assert_eq!(star.count_order_ideals().unwrap(), 5);
        let ex = example66();
        assert_eq!(brute_force_ideals(&ex), 8);
        assert_eq!(ex.count_order_ideals().unwrap(), 8);
        for n in 1..=15 {
            let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            assert_eq!(Poset::chain(&refs).unwrap().count_order_ideals().unwrap(), n as u64 + 1);
        }
        let antichain: String = (0..21).map(|i| format!("elem x{i}\n")).collect();
        assert!(matches!(
            Poset::parse(&antichain).unwrap().count_order_ideals(),
            Err(Error::SizeLimit { size: 21, .. })
        ));
    }

    #[test]
    fn linear_extensions() {
        let name_list = |p: &Poset| p.linear_extension().iter().map(|&e| p.name(e).to_string()).collect::<Vec<_>>();
        assert_eq!(name_list(&Poset::chain(&["a", "b", "c", "d"]).unwrap()), ["a", "b", "c", "d"]);
        assert_eq!(name_list(&Poset::parse("a < c\na < b").unwrap()), ["a", "b", "c"]);
        assert_eq!(name_list(&example66()), ["a", "b", "c", "d", "e"]);
    }

    #[test]
    fn json_export() {
        let star = Poset::parse("a < b\na < c").unwrap();
        let json = serde_json::to_string(&star.to_json()).unwrap();
        assert_eq!(json, r#"{"elements":["a","b","c"],"covers":[["a","b"],["a","c"]],"root":"a"}"#);
        assert_eq!(example66().to_json().root, None);
    }

    #[test]
    fn tree_enumeration_counts() {
        let counts: Vec<usize> = (1..=7).map(|n| rooted_trees(n).len()).collect();
        assert_eq!(counts, [1, 1, 2, 4, 9, 20, 48]);
        for t in rooted_trees(6) {
            // Every interval of a tree is a chain.
            for p in t.poset().elements() {
                for q in t.poset().elements() {
                    if t.leq(p, q) {
                        let ch = t.chain_between(p, q).unwrap();
                        for w in ch.windows(2) {
                            assert_eq!(t.parent(w[1]), Some(w[0]));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn parameter_pairs_of_star() {
        let star = Poset::parse("a < b\na < c").unwrap().as_rooted_tree().unwrap();
        let pairs: Vec<(String, String)> = star
            .parameter_pairs()
            .into_iter()
            .map(|(q, p)| (star.name(q).to_string(), star.name(p).to_string()))
            .collect();
        let expect = [("a", "b"), ("c", "b"), ("a", "c"), ("b", "c")];
        assert_eq!(pairs, expect.map(|(q, p)| (q.to_string(), p.to_string())));
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        fn random_poset() -> impl Strategy<Value = Poset> {
            (1usize..8).prop_flat_map(|n| {
                proptest::collection::vec((0..n, 0..n), 0..12).prop_map(move |pairs| {
                    let names = (0..n).map(|i| format!("e{i}")).collect();
                    // Orient every relation upward so there are no cycles.
                    let rel: Vec<_> = pairs.into_iter().filter(|(a, b)| a < b).collect();
                    Poset::from_relations(names, &rel).unwrap()
                })
            })
        }

        fn random_tree() -> impl Strategy<Value = RootedTree> {
            (1usize..8).prop_flat_map(|n| {
                proptest::collection::vec(0usize..1000, n.saturating_sub(1)).prop_map(move |picks| {
                    let names = (0..n).map(|i| format!("t{i}")).collect();
                    let rel: Vec<_> = picks.iter().enumerate().map(|(i, k)| (k % (i + 1), i + 1)).collect();
                    Poset::from_relations(names, &rel).unwrap().as_rooted_tree().unwrap()
                })
            })
        }

        proptest! {
            #[test]
            fn covers_are_the_reduction_of_the_closure(p in random_poset()) {
                let rel: Vec<_> = p.covers().iter().map(|&(a, b)| (a.index(), b.index())).collect();
                let rebuilt = Poset::from_relations(p.names().to_vec(), &rel).unwrap();
                prop_assert_eq!(rebuilt.covers(), p.covers());
                for a in p.elements() {
                    for b in p.elements() {
                        prop_assert_eq!(rebuilt.lt(a, b), p.lt(a, b));
                        prop_assert!(!(p.lt(a, b) && p.lt(b, a)));
                    }
                }
            }

            #[test]
            fn meet_is_greatest_lower_bound(t in random_tree()) {
                let els: Vec<_> = t.poset().elements().collect();
                for &p in &els {
                    for &q in &els {
                        let m = t.meet(p, q);
                        prop_assert!(t.leq(m, p) && t.leq(m, q));
                        for &r in &els {
                            if t.leq(r, p) && t.leq(r, q) {
                                prop_assert!(t.leq(r, m));
                            }
                        }
                    }
                }
            }

            #[test]
            fn parent_is_strictly_deeper(t in random_tree()) {
                for p in t.poset().elements() {
                    if let Some(a) = t.parent(p) {
                        prop_assert!(t.depth(a) > t.depth(p));
                    }
                }
            }
        }
    }
}
