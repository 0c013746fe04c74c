//! Node/member graphs of assemblies and truss checks.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use crate::assembly::Assembly;
use crate::geom::{LatticePoint, WorldPoint, TOL};
use crate::lattice::LatticeAssembly;

/// FCC kissing number: the valence of a node surrounded on all sides.
pub const FULL_VALENCE: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Node {
    Lattice(LatticePoint),
    World(WorldPoint),
}

impl Node {
    pub fn world(&self) -> WorldPoint {
        match self {
            Node::Lattice(p) => p.to_world(),
            Node::World(p) => *p,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeTag {
    Interior,
    Boundary,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Member {
    pub a: usize,
    pub b: usize,
    /// Cells having this member as an edge.
    pub cells: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FrameGraph {
    nodes: Vec<Node>,
    members: Vec<Member>,
}

fn key(p: &WorldPoint) -> [i64; 3] {
    [(p.x * 1e6).round() as i64, (p.y * 1e6).round() as i64, (p.z * 1e6).round() as i64]
}

impl FrameGraph {
    /// Nodes are the distinct cell vertices sorted by coordinates; members are
    /// the distinct cell edges sorted by endpoint indices. Exact when every
    /// vertex is a lattice point.
    pub fn extract(assembly: &Assembly) -> FrameGraph {
        let geometry = assembly.geometry();
        let edges: Vec<(usize, Vec<(WorldPoint, WorldPoint)>)> = geometry
            .iter()
            .enumerate()
            .map(|(i, c)| (i, c.edges().iter().map(|&(a, b)| (c.vertices()[a], c.vertices()[b])).collect()))
            .collect();
        let exact: Option<Vec<Vec<(LatticePoint, LatticePoint)>>> = edges
            .iter()
            .map(|(_, es)| es.iter().map(|(a, b)| Some((LatticePoint::from_world(a)?, LatticePoint::from_world(b)?))).collect())
            .collect();
        match exact {
            Some(ex) => Self::build(ex.into_iter().enumerate().collect(), |p| *p, Node::Lattice),
            None => Self::build(edges, key, Node::World),
        }
    }

    pub fn extract_lattice(assembly: &LatticeAssembly) -> FrameGraph {
        let edges = assembly
            .placements()
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let v = p.vertices();
                let c = p.cell();
                (i, c.edges().iter().map(|&(a, b)| (v[a], v[b])).collect())
            })
            .collect();
        Self::build(edges, |p| *p, Node::Lattice)
    }

    fn build<P: Copy, K: Ord + Clone>(
        edges: Vec<(usize, Vec<(P, P)>)>,
        key: impl Fn(&P) -> K,
        node: impl Fn(P) -> Node,
    ) -> FrameGraph {
        let mut index: BTreeMap<K, P> = BTreeMap::new();
        for (_, es) in &edges {
            for (a, b) in es {
                index.entry(key(a)).or_insert(*a);
                index.entry(key(b)).or_insert(*b);
            }
        }
        let keys: Vec<K> = index.keys().cloned().collect();
        let nodes: Vec<Node> = index.values().map(|p| node(*p)).collect();
        let find = |k: &K| keys.binary_search(k).unwrap();
        let mut members: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (cell, es) in &edges {
            for (a, b) in es {
                let (i, j) = (find(&key(a)), find(&key(b)));
                let e = members.entry((i.min(j), i.max(j))).or_default();
                if !e.contains(cell) {
                    e.push(*cell);
                }
            }
        }
        let members = members.into_iter().map(|((a, b), cells)| Member { a, b, cells }).collect();
        FrameGraph { nodes, members }
    }

    /// Graph from explicit parts, as read from a scene file.
    pub fn from_parts(nodes: Vec<WorldPoint>, members: Vec<[usize; 2]>) -> FrameGraph {
        FrameGraph {
            nodes: nodes.into_iter().map(Node::World).collect(),
            members: members.into_iter().map(|[a, b]| Member { a, b, cells: Vec::new() }).collect(),
        }
    }

    pub fn from_nodes(nodes: Vec<Node>, members: Vec<[usize; 2]>) -> FrameGraph {
        FrameGraph { nodes, members: members.into_iter().map(|[a, b]| Member { a, b, cells: Vec::new() }).collect() }
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn without_member(&self, i: usize) -> FrameGraph {
        let mut g = self.clone();
        g.members.remove(i);
        g
    }

    pub fn valences(&self) -> Vec<usize> {
        let mut v = vec![0; self.nodes.len()];
        for m in &self.members {
            if m.a < v.len() {
                v[m.a] += 1;
            }
            if m.b < v.len() {
                v[m.b] += 1;
            }
        }
        v
    }

    pub fn node_tags(&self) -> Vec<NodeTag> {
        self.valences().into_iter().map(|v| if v == FULL_VALENCE { NodeTag::Interior } else { NodeTag::Boundary }).collect()
    }

    fn neighbours(&self) -> Vec<HashSet<usize>> {
        let mut adj = vec![HashSet::new(); self.nodes.len()];
        for m in &self.members {
            if m.a < adj.len() && m.b < adj.len() {
                adj[m.a].insert(m.b);
                adj[m.b].insert(m.a);
            }
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        if self.nodes.is_empty() {
            return true;
        }
        let adj = self.neighbours();
        let mut seen = vec![false; self.nodes.len()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(n) = queue.pop_front() {
            for &m in &adj[n] {
                if !seen[m] {
                    seen[m] = true;
                    queue.push_back(m);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Members not in any triangle of the graph.
    pub fn untriangulated(&self) -> Vec<usize> {
        let adj = self.neighbours();
        (0..self.members.len())
            .filter(|&i| {
                let m = &self.members[i];
                m.a >= adj.len() || m.b >= adj.len() || adj[m.a].is_disjoint(&adj[m.b])
            })
            .collect()
    }

    pub fn validate(&self) -> ValidationReport {
        let mut checks = Vec::new();
        let bad_index = self.members.iter().filter(|m| m.a >= self.nodes.len() || m.b >= self.nodes.len() || m.a == m.b).count();
        checks.push(Check::new("member endpoints", bad_index == 0, format!("{bad_index} members with invalid endpoints")));

        let exact = self.nodes.iter().all(|n| matches!(n, Node::Lattice(_)));
        let lengths: Vec<f64> = self
            .members
            .iter()
            .filter(|m| m.a < self.nodes.len() && m.b < self.nodes.len())
            .map(|m| (self.nodes[m.a].world() - self.nodes[m.b].world()).norm_squared())
            .collect();
        let (ok, detail) = if exact {
            let off = self
                .members
                .iter()
                .filter(|m| match (self.nodes[m.a], self.nodes[m.b]) {
                    (Node::Lattice(a), Node::Lattice(b)) => a.dist2(b) != 2,
                    _ => true,
                })
                .count();
            (off == 0, format!("{off} members with squared length other than 2"))
        } else {
            let first = lengths.first().copied().unwrap_or(0.0).sqrt();
            let worst = lengths.iter().map(|l| (l.sqrt() - first).abs()).fold(0.0, f64::max);
            (worst <= TOL * first.max(1.0), format!("largest length deviation {worst:.3e}"))
        };
        checks.push(Check::new("uniform member length", ok, detail));

        let max = self.valences().into_iter().max().unwrap_or(0);
        let interior = self.node_tags().iter().filter(|t| **t == NodeTag::Interior).count();
        checks.push(Check::new(
            "valence",
            max <= FULL_VALENCE,
            format!("max valence {max}, {interior} interior nodes of valence {FULL_VALENCE}"),
        ));

        let connected = self.is_connected();
        checks.push(Check::new("connected", connected, if connected { "single component".into() } else { "several components".into() }));

        let loose = self.untriangulated();
        checks.push(Check::new("triangulated", loose.is_empty(), format!("{} members outside every triangle", loose.len())));

        let mut seen = HashSet::new();
        let dup = self.members.iter().filter(|m| !seen.insert((m.a.min(m.b), m.a.max(m.b)))).count();
        checks.push(Check::new("distinct members", dup == 0, format!("{dup} duplicate members")));
        ValidationReport { checks }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, passed: bool, detail: String) -> Self {
        Check { name, passed, detail }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assembly::Placement;
    use crate::lattice::LatticePlacement;

    fn tetra() -> Assembly {
        Assembly::single(Placement::Lattice(LatticePlacement::up(LatticePoint::ORIGIN)))
    }

    #[test]
    fn single_tetra() {
        let g = FrameGraph::extract(&tetra());
        assert_eq!(g.nodes().len(), 4);
        assert_eq!(g.members().len(), 6);
        assert!(g.node_tags().iter().all(|t| *t == NodeTag::Boundary));
        let r = g.validate();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn deleting_a_member_breaks_triangulation() {
        // A tetra minus one edge keeps a triangle through every other edge.
        let broken = FrameGraph::extract(&tetra()).without_member(0);
        assert!(broken.untriangulated().is_empty());
        let g2 = FrameGraph::from_parts(
            vec![WorldPoint::new(0.0, 0.0, 0.0), WorldPoint::new(1.0, 0.0, 0.0), WorldPoint::new(0.5, 0.8, 0.0)],
            vec![[0, 1], [1, 2], [0, 2]],
        );
        assert!(g2.validate().check("triangulated").unwrap().passed);
        let r = g2.without_member(2).validate();
        assert!(!r.check("triangulated").unwrap().passed);
        assert!(!r.passed());
    }

    #[test]
    fn world_graphs_dedup_within_tolerance() {
        let g = FrameGraph::from_parts(vec![WorldPoint::new(0.0, 0.0, 0.0), WorldPoint::new(0.0, 0.0, 3.0)], vec![[0, 1], [1, 0]]);
        assert!(!g.validate().check("distinct members").unwrap().passed);
    }
}
