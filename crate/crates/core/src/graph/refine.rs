use super::{Edge, EdgeSpec, GraphSpec, Loc, MetricGraph, Point, VertexSpec};
use crate::error::Result;
use crate::rational::Q;

/// A finer model of a parent graph, with point translation in both directions.
#[derive(Debug, Clone)]
pub struct Refinement {
    pub parent: MetricGraph,
    pub graph: MetricGraph,
    vertex_map: Vec<usize>,
    vertex_loc: Vec<Loc>,
    cuts: Vec<Vec<Q>>,
    cut_vertices: Vec<Vec<usize>>,
    pieces: Vec<Vec<usize>>,
    piece_origin: Vec<(usize, Q)>,
}

impl Refinement {
    /// Splits each parent edge at the given sorted interior offsets.
    /// `name(edge, offset, i)` names the i-th (1-based) new vertex on `edge`.
    pub fn new(
        parent: &MetricGraph,
        cuts: Vec<Vec<Q>>,
        name: impl Fn(&Edge, &Q, usize) -> String,
    ) -> Result<Refinement> {
        let mut spec = GraphSpec {
            vertices: parent.vertices.iter().map(|v| VertexSpec { id: v.id.clone(), weight: v.weight }).collect(),
            edges: Vec::new(),
        };
        let mut cut_names = Vec::with_capacity(cuts.len());
        let mut piece_names = Vec::with_capacity(cuts.len());
        for (e, cs) in parent.edges.iter().zip(&cuts) {
            let names: Vec<String> = cs.iter().enumerate().map(|(i, t)| name(e, t, i + 1)).collect();
            for n in &names {
                spec.vertices.push(VertexSpec { id: n.clone(), weight: 0 });
            }
            let from = &parent.vertices[e.from].id;
            let to = &parent.vertices[e.to].id;
            let mut ends = vec![from.clone()];
            ends.extend(names.iter().cloned());
            ends.push(to.clone());
            let mut offs = vec![Q::from_integer(0.into())];
            offs.extend(cs.iter().cloned());
            offs.push(e.length.clone());
            let mut ps = Vec::new();
            for j in 0..=cs.len() {
                let id = if cs.is_empty() { e.id.clone() } else { format!("{}#{}", e.id, j + 1) };
                spec.edges.push(EdgeSpec {
                    id: id.clone(),
                    from: ends[j].clone(),
                    to: ends[j + 1].clone(),
                    length: &offs[j + 1] - &offs[j],
                });
                ps.push(id);
            }
            cut_names.push(names);
            piece_names.push(ps);
        }
        let graph = MetricGraph::build(&spec)?;
        let vertex_map: Vec<usize> = parent.vertices.iter().map(|v| graph.vindex[&v.id]).collect();
        let mut vertex_loc = vec![Loc::Vertex(0); graph.num_vertices()];
        for (i, &r) in vertex_map.iter().enumerate() {
            vertex_loc[r] = Loc::Vertex(i);
        }
        let mut cut_vertices = Vec::with_capacity(cuts.len());
        let mut pieces = Vec::with_capacity(cuts.len());
        let mut piece_origin = vec![(0, Q::from_integer(0.into())); graph.num_edges()];
        for (e, (names, ps)) in cut_names.iter().zip(&piece_names).enumerate() {
            let cv: Vec<usize> = names.iter().map(|n| graph.vindex[n]).collect();
            for (i, &v) in cv.iter().enumerate() {
                vertex_loc[v] = Loc::Edge(e, cuts[e][i].clone());
            }
            let pv: Vec<usize> = ps.iter().map(|n| graph.eindex[n]).collect();
            for (j, &p) in pv.iter().enumerate() {
                let start = if j == 0 { Q::from_integer(0.into()) } else { cuts[e][j - 1].clone() };
                piece_origin[p] = (e, start);
            }
            cut_vertices.push(cv);
            pieces.push(pv);
        }
        Ok(Refinement { parent: parent.clone(), graph, vertex_map, vertex_loc, cuts, cut_vertices, pieces, piece_origin })
    }

    /// Parent location to refined location.
    pub fn down(&self, loc: &Loc) -> Loc {
        match loc {
            Loc::Vertex(v) => Loc::Vertex(self.vertex_map[*v]),
            Loc::Edge(e, t) => {
                let cs = &self.cuts[*e];
                match cs.binary_search(t) {
                    Ok(i) => Loc::Vertex(self.cut_vertices[*e][i]),
                    Err(j) => {
                        let p = self.pieces[*e][j];
                        Loc::Edge(p, t - &self.piece_origin[p].1)
                    }
                }
            }
        }
    }

    /// Refined location to parent location.
    pub fn up(&self, loc: &Loc) -> Loc {
        match loc {
            Loc::Vertex(v) => self.vertex_loc[*v].clone(),
            Loc::Edge(p, s) => {
                let (e, start) = &self.piece_origin[*p];
                Loc::Edge(*e, start + s)
            }
        }
    }

    pub fn translate(&self, p: &Point) -> Result<Point> {
        Ok(self.graph.point(&self.down(&self.parent.locate(p)?)))
    }

    pub fn lift(&self, p: &Point) -> Result<Point> {
        Ok(self.parent.point(&self.up(&self.graph.locate(p)?)))
    }

    /// Refined vertex index of a parent vertex.
    pub fn vertex(&self, parent_vertex: usize) -> usize {
        self.vertex_map[parent_vertex]
    }

    /// Refined edges along a parent edge, in the parent's orientation.
    pub fn pieces(&self, parent_edge: usize) -> &[usize] {
        &self.pieces[parent_edge]
    }

    /// Parent edge carrying a refined edge and the offset where it starts.
    pub fn piece_origin(&self, refined_edge: usize) -> (usize, &Q) {
        let (e, s) = &self.piece_origin[refined_edge];
        (*e, s)
    }
}

impl Refinement {
    /// Interior cut offsets of a parent edge with the refined vertex at each.
    pub fn cut_points(&self, parent_edge: usize) -> impl Iterator<Item = (&Q, usize)> + '_ {
        self.cuts[parent_edge].iter().zip(self.cut_vertices[parent_edge].iter().copied())
    }
}
