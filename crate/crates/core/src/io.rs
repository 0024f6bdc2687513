//! JSON file formats for graphs, colorings and trees.
//!
//! Output is canonical: ids ascending, edges as `[min,max]` sorted
//! lexicographically, maps keyed by decimal id in numeric order. Saving a
//! loaded file of canonical form reproduces it byte for byte.

use std::collections::BTreeMap;

use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use crate::coloring::PartialColoring;
use crate::error::{Error, Result};
use crate::graph::{DegreeClass, Graph};
use crate::tree::TreeOrder;

/// A map keyed by vertex id, serialized as a JSON object in the given order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdMap<T>(pub Vec<(usize, T)>);

impl<T: Serialize> Serialize for IdMap<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            m.serialize_entry(&k.to_string(), v)?;
        }
        m.end()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexRecord {
    id: usize,
    #[serde(default = "finite")]
    class: DegreeClass,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    omega: Vec<usize>,
}

fn finite() -> DegreeClass {
    DegreeClass::Finite
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    vertices: Vec<VertexRecord>,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ColoringFile {
    colors: BTreeMap<String, u8>,
    #[serde(default)]
    frozen: Vec<usize>,
}

#[derive(Serialize)]
struct ColoringOut {
    colors: IdMap<u8>,
    frozen: Vec<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TreeFile {
    root: usize,
    parent: BTreeMap<String, Option<usize>>,
}

#[derive(Serialize)]
struct TreeOut {
    root: usize,
    parent: IdMap<usize>,
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

fn parse_id(key: &str) -> Result<usize> {
    key.parse()
        .map_err(|_| Error::Parse(format!("key {key:?} is not a vertex id")))
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn load_graph(bytes: &[u8]) -> Result<Graph> {
    let file: GraphFile = serde_json::from_slice(bytes).map_err(parse_err)?;
    let n = file.vertices.len();
    let mut slots: Vec<Option<VertexRecord>> = (0..n).map(|_| None).collect();
    for (i, rec) in file.vertices.into_iter().enumerate() {
        if rec.id >= n {
            return Err(Error::Parse(format!(
                "vertices[{i}]: id {} is not in 0..{n} (ids must be dense)",
                rec.id
            )));
        }
        let id = rec.id;
        if slots[id].replace(rec).is_some() {
            return Err(Error::Parse(format!("vertices[{i}]: duplicate id {id}")));
        }
    }
    let records: Vec<VertexRecord> = slots.into_iter().map(|r| r.expect("dense ids")).collect();
    let labels = records.iter().map(|r| r.class).collect();
    let mut g = Graph::new(n, &file.edges, labels).map_err(|e| match e {
        Error::Input(m) => Error::Parse(m),
        Error::OutOfRange { vertex, n } => {
            Error::Parse(format!("edge endpoint {vertex} is not a vertex id (n = {n})"))
        }
        other => other,
    })?;
    for r in &records {
        for &u in &r.omega {
            g.declare_omega(r.id, u)
                .map_err(|e| Error::Parse(format!("vertex {}: {e}", r.id)))?;
        }
    }
    let named = records.iter().filter(|r| r.name.is_some()).count();
    if named == n && n > 0 {
        g = g.with_names(records.into_iter().map(|r| r.name.unwrap()).collect())?;
    } else if named > 0 {
        return Err(Error::Parse("either every vertex has a name or none does".into()));
    }
    Ok(g)
}

pub fn save_graph(g: &Graph) -> Result<String> {
    let vertices = (0..g.n())
        .map(|v| VertexRecord {
            id: v,
            class: g.label(v),
            name: g.name(v).map(str::to_owned),
            omega: g.omega_neighbors(v).to_vec(),
        })
        .collect();
    to_json(&GraphFile { vertices, edges: g.edges() })
}

/// Loads a coloring over `n` vertices; ids absent from `colors` are uncolored.
pub fn load_coloring(bytes: &[u8], n: usize) -> Result<PartialColoring> {
    let file: ColoringFile = serde_json::from_slice(bytes).map_err(parse_err)?;
    let mut c = PartialColoring::new(n);
    for (key, bit) in &file.colors {
        let v = parse_id(key)?;
        if v >= n {
            return Err(Error::Parse(format!("colors: vertex {v} out of range (n = {n})")));
        }
        match bit {
            0 | 1 => c.set(v, *bit == 1),
            b => return Err(Error::Parse(format!("colors[{key}]: color must be 0 or 1, got {b}"))),
        }
    }
    for &v in &file.frozen {
        if v >= n || !c.is_colored(v) {
            return Err(Error::Parse(format!("frozen vertex {v} has no color")));
        }
        c.freeze(v)?;
    }
    Ok(c)
}

fn coloring_out(c: &PartialColoring) -> ColoringOut {
    ColoringOut {
        colors: IdMap((0..c.n()).filter_map(|v| c.get(v).map(|b| (v, b as u8))).collect()),
        frozen: c.frozen().to_vec(),
    }
}

/// The coloring as a JSON value, for embedding in larger documents.
pub fn coloring_value(c: &PartialColoring) -> serde_json::Value {
    serde_json::to_value(coloring_out(c)).expect("coloring serializes")
}

pub fn save_coloring(c: &PartialColoring) -> Result<String> {
    to_json(&coloring_out(c))
}

/// Loads a tree over `n` vertices. The root may be absent from `parent`, map to null, or map to itself.
pub fn load_tree(bytes: &[u8], n: usize) -> Result<TreeOrder> {
    let file: TreeFile = serde_json::from_slice(bytes).map_err(parse_err)?;
    let mut parents = vec![None; n];
    for (key, p) in &file.parent {
        let v = parse_id(key)?;
        if v >= n {
            return Err(Error::Parse(format!("parent: vertex {v} out of range (n = {n})")));
        }
        if v == file.root && p.is_some_and(|p| p != v) {
            return Err(Error::Parse(format!("root {v} cannot have a parent")));
        }
        parents[v] = *p;
    }
    if file.root < n {
        parents[file.root] = Some(file.root);
    }
    TreeOrder::from_parents(file.root, parents).map_err(|e| Error::Parse(e.to_string()))
}

pub fn save_tree(t: &TreeOrder) -> Result<String> {
    let parent = t
        .members()
        .iter()
        .filter(|&v| v != t.root())
        .filter_map(|v| t.parent(v).map(|p| (v, p)))
        .collect();
    to_json(&TreeOut { root: t.root(), parent: IdMap(parent) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_vertex_graph() {
        let g = load_graph(
            br#"{"vertices":[{"id":0,"class":"finite"},{"id":1,"class":"infinite"}],"edges":[[0,1]]}"#,
        )
        .unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.label(1), DegreeClass::Infinite);
        assert!(g.has_edge(0, 1));
    }

    #[test]
    fn self_loop_rejected() {
        let err = load_graph(br#"{"vertices":[{"id":0}],"edges":[[0,0]]}"#).unwrap_err();
        assert!(matches!(&err, Error::Parse(m) if m.contains("self-loop")), "{err}");
    }

    #[test]
    fn malformed_json_reports_location() {
        let err = load_graph(b"{\"vertices\": [\n  {\"id\": 0,}\n]}").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }

    #[test]
    fn bad_label_and_duplicates() {
        assert!(load_graph(br#"{"vertices":[{"id":0,"class":"huge"}],"edges":[]}"#).is_err());
        assert!(load_graph(br#"{"vertices":[{"id":0},{"id":1}],"edges":[[0,1],[1,0]]}"#).is_err());
        assert!(load_graph(br#"{"vertices":[{"id":0},{"id":0}],"edges":[]}"#).is_err());
        assert!(load_graph(br#"{"vertices":[{"id":0},{"id":2}],"edges":[]}"#).is_err());
    }

    #[test]
    fn canonical_round_trip() {
        let text = load_graph(br#"{"vertices":[{"id":1},{"id":0,"class":"infinite","omega":[1]}],"edges":[[1,0]]}"#)
            .and_then(|g| save_graph(&g))
            .unwrap();
        let again = save_graph(&load_graph(text.as_bytes()).unwrap()).unwrap();
        assert_eq!(text, again);
        assert!(text.contains("\"omega\""));
    }

    #[test]
    fn coloring_orders_ids_numerically() {
        let mut c = PartialColoring::new(12);
        c.set(2, true);
        c.set(10, false);
        c.freeze(10).unwrap();
        let text = save_coloring(&c).unwrap();
        assert!(text.find("\"2\"").unwrap() < text.find("\"10\"").unwrap());
        assert_eq!(load_coloring(text.as_bytes(), 12).unwrap(), c);
    }

    #[test]
    fn coloring_rejects_bad_values() {
        assert!(load_coloring(br#"{"colors":{"0":2}}"#, 1).is_err());
        assert!(load_coloring(br#"{"colors":{"0":1},"frozen":[1]}"#, 2).is_err());
    }

    #[test]
    fn tree_round_trip() {
        let t = TreeOrder::from_parents(0, vec![Some(0), Some(0), Some(1)]).unwrap();
        let text = save_tree(&t).unwrap();
        assert_eq!(load_tree(text.as_bytes(), 3).unwrap(), t);
    }
}
