#![allow(dead_code)]

use std::path::PathBuf;

use lpdeform::{Poset, RootedTree};

pub fn fixture(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect();
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn tree(name: &str) -> RootedTree {
    Poset::parse(&fixture(name)).unwrap().as_rooted_tree().unwrap()
}

/// Tree on `n = parents.len() + 1` nodes where node `i + 1` hangs below
/// node `parents[i] % (i + 1)`.
pub fn tree_from_parents(parents: &[usize]) -> RootedTree {
    let names = (0..=parents.len()).map(|i| format!("v{i}")).collect();
    let rel: Vec<(usize, usize)> = parents.iter().enumerate().map(|(i, &p)| (p % (i + 1), i + 1)).collect();
    Poset::from_relations(names, &rel).unwrap().as_rooted_tree().unwrap()
}
