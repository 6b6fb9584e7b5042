//! Switchings and correction graphs.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::formula::{Formula, Occ};
use super::structure::{class_text, LeafRef, ParaproofStructure};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    L,
    R,
}

/// One side per par node, in the order of [`ParaproofStructure::par_nodes`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Switching(pub Vec<Side>);

impl Switching {
    /// The `k`-th switching of a binary counter over `n` par nodes; bit i set means R.
    pub fn from_counter(n: usize, k: u64) -> Switching {
        Switching((0..n).map(|i| if k >> i & 1 == 1 { Side::R } else { Side::L }).collect())
    }
}

impl fmt::Display for Switching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", if *s == Side::L { 'L' } else { 'R' })?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Vertex {
    Node { tree: usize, occ: Occ },
    Class(usize),
    Cut(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<(usize, usize)>,
}

/// Result of one traversal: the first cycle found (as a vertex path) and the components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shape {
    pub cycle: Option<Vec<usize>>,
    pub components: Vec<usize>,
    pub component_count: usize,
}

impl Graph {
    pub fn shape(&self) -> Shape {
        let n = self.vertices.len();
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            adj[a].push((b, e));
            adj[b].push((a, e));
        }
        let mut comp = vec![usize::MAX; n];
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut cycle = None;
        let mut count = 0;
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            let mut stack = vec![(s, 0usize)];
            let mut on_stack = vec![false; n];
            on_stack[s] = true;
            while let Some(&mut (u, ref mut k)) = stack.last_mut() {
                if *k < adj[u].len() {
                    let (w, e) = adj[u][*k];
                    *k += 1;
                    if parent[u].map_or(false, |(_, pe)| pe == e) {
                        continue;
                    }
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        parent[w] = Some((u, e));
                        on_stack[w] = true;
                        stack.push((w, 0));
                    } else if cycle.is_none() && on_stack[w] {
                        let mut path = vec![u];
                        let mut x = u;
                        while x != w {
                            x = parent[x].expect("ancestor on stack").0;
                            path.push(x);
                        }
                        cycle = Some(path);
                    }
                } else {
                    on_stack[u] = false;
                    stack.pop();
                }
            }
            count += 1;
        }
        Shape { cycle, components: comp, component_count: count }
    }

    pub fn is_tree(&self) -> bool {
        let s = self.shape();
        s.cycle.is_none() && s.component_count <= 1
    }

    /// Vertices on the path between `a` and `b` in an acyclic graph.
    pub fn path(&self, a: usize, b: usize) -> Option<Vec<usize>> {
        let n = self.vertices.len();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(x, y) in &self.edges {
            adj[x].push(y);
            adj[y].push(x);
        }
        let mut prev = vec![usize::MAX; n];
        prev[a] = a;
        let mut queue = std::collections::VecDeque::from([a]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if prev[w] == usize::MAX {
                    prev[w] = u;
                    queue.push_back(w);
                }
            }
        }
        if prev[b] == usize::MAX {
            return None;
        }
        let mut p = vec![b];
        let mut x = b;
        while x != a {
            x = prev[x];
            p.push(x);
        }
        p.reverse();
        Some(p)
    }
}

/// Graph data shared by all switchings of a structure.
#[derive(Debug, Clone)]
pub struct Skeleton {
    pub vertices: Vec<Vertex>,
    pub labels: Vec<String>,
    pub fixed: Vec<(usize, usize)>,
    /// For each par node: (node, left child, right child).
    pub pars: Vec<(usize, usize, usize)>,
    pub index: BTreeMap<Vertex, usize>,
}

impl Skeleton {
    pub fn new(s: &ParaproofStructure) -> Skeleton {
        let mut vertices = Vec::new();
        let mut labels = Vec::new();
        let mut index = BTreeMap::new();
        for (i, t) in s.trees.iter().enumerate() {
            for u in t.nodes() {
                let v = Vertex::Node { tree: i, occ: u.clone() };
                index.insert(v.clone(), vertices.len());
                let f = t.formula.subformula_at(&u).map(|f| f.to_string()).unwrap_or_default();
                labels.push(format!("{}:{} {}", i, u, f));
                vertices.push(v);
            }
        }
        for (k, c) in s.classes.iter().enumerate() {
            index.insert(Vertex::Class(k), vertices.len());
            labels.push(format!("class {}", class_text(c)));
            vertices.push(Vertex::Class(k));
        }
        for &(i, j) in &s.cuts {
            index.insert(Vertex::Cut(i, j), vertices.len());
            labels.push(format!("cut {{{},{}}}", i, j));
            vertices.push(Vertex::Cut(i, j));
        }
        let node = |index: &BTreeMap<Vertex, usize>, tree: usize, occ: Occ| index[&Vertex::Node { tree, occ }];
        let mut fixed = Vec::new();
        let mut pars = Vec::new();
        for (i, t) in s.trees.iter().enumerate() {
            for u in t.nodes() {
                if !t.is_internal(&u) {
                    continue;
                }
                let me = node(&index, i, u.clone());
                let a = node(&index, i, u.child(1));
                let b = node(&index, i, u.child(2));
                match t.formula.subformula_at(&u) {
                    Some(Formula::Par(..)) => pars.push((me, a, b)),
                    _ => {
                        fixed.push((me, a));
                        fixed.push((me, b));
                    }
                }
            }
        }
        for (k, c) in s.classes.iter().enumerate() {
            for LeafRef { tree, occ } in c {
                if let Some(&l) = index.get(&Vertex::Node { tree: *tree, occ: occ.clone() }) {
                    fixed.push((index[&Vertex::Class(k)], l));
                }
            }
        }
        for &(i, j) in &s.cuts {
            let c = index[&Vertex::Cut(i, j)];
            fixed.push((node(&index, i, Occ::root()), c));
            fixed.push((c, node(&index, j, Occ::root())));
        }
        Skeleton { vertices, labels, fixed, pars, index }
    }

    pub fn graph(&self, sw: &Switching) -> Graph {
        assert_eq!(sw.0.len(), self.pars.len(), "switching must cover every par node");
        let mut edges = self.fixed.clone();
        for (&(p, a, b), side) in self.pars.iter().zip(&sw.0) {
            // L cuts the edge to the right premise, R the edge to the left one.
            edges.push((p, if *side == Side::L { a } else { b }));
        }
        Graph { vertices: self.vertices.clone(), edges }
    }
}

pub fn correction_graph(s: &ParaproofStructure, sw: &Switching) -> Graph {
    Skeleton::new(s).graph(sw)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(src: &str) -> ParaproofStructure {
        ParaproofStructure::parse(src).unwrap()
    }

    #[test]
    fn axiom_graph_is_three_vertex_tree() {
        let s = ParaproofStructure::axiom(Formula::atom("C"));
        let g = correction_graph(&s, &Switching(vec![]));
        assert_eq!(g.vertices.len(), 3);
        assert!(g.is_tree());
    }

    #[test]
    fn par_switch_left_is_tree() {
        let s = st("tree 0: (C % C^) @ {1, 2}\nclass {0:1, 0:2}\n");
        let g = correction_graph(&s, &Switching(vec![Side::L]));
        assert!(g.is_tree());
        let root = 0;
        assert!(!g.edges.iter().any(|&(a, b)| (a, b) == (root, 2)));
    }

    #[test]
    fn tensor_cycle() {
        let s = st("tree 0: (C * C^) @ {1, 2}\nclass {0:1, 0:2}\n");
        let g = correction_graph(&s, &Switching(vec![]));
        assert_eq!(g.vertices.len(), 4);
        let sh = g.shape();
        assert_eq!(sh.cycle.map(|c| c.len()), Some(4));
    }

    #[test]
    fn parallel_edges_are_cycles() {
        let g = Graph { vertices: vec![Vertex::Class(0), Vertex::Class(1)], edges: vec![(0, 1), (0, 1)] };
        assert!(g.shape().cycle.is_some());
    }
}
