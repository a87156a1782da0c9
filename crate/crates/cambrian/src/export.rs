//! JSON and OFF serialization of polytopes and fans. Exact scalars render
//! as fraction strings when rational, as residue strings in the field
//! generator otherwise; the minimal polynomial goes in the header.

use serde_json::{json, Value};

use crate::coxeter::CoxeterSystem;
use crate::fans::CambrianFan;
use crate::polytopes::{BasePoint, Polytope};
use crate::scalar::Scalar;
use crate::{Error, Result};

fn scalar_string(c: &Scalar) -> String {
    c.to_string()
}

fn vector_strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(scalar_string).collect()
}

fn vector_floats(v: &[Scalar]) -> Vec<f64> {
    v.iter().map(Scalar::to_f64).collect()
}

fn header(sys: &CoxeterSystem) -> Value {
    let mut h = json!({
        "system": sys.label,
        "generators": sys.gen_names,
    });
    if !sys.field.is_rational() {
        h["min_poly"] = json!(sys.field.min_poly_string());
    }
    h
}

/// The full polytope record: vertices with their defining words, half
/// spaces with labels, and the vertex-facet incidence matrix.
pub fn polytope_json(
    poly: &Polytope,
    c_word: Option<&[usize]>,
    a: &BasePoint,
    vertex_words: &[String],
) -> Value {
    let sys = &poly.sys;
    let mut out = header(sys);
    if let Some(c) = c_word {
        out["coxeter_element"] = json!(c
            .iter()
            .map(|&s| sys.gen_names[s].clone())
            .collect::<Vec<_>>());
    }
    out["base_point"] = json!({
        "weight_coeffs": vector_strings(&a.coeffs),
        "coords_exact": vector_strings(&a.point),
    });
    out["vertices"] = json!(poly
        .vertices
        .iter()
        .zip(vertex_words)
        .map(|(v, word)| json!({
            "word": word,
            "coords_exact": vector_strings(&v.point),
            "coords_float": vector_floats(&v.point),
        }))
        .collect::<Vec<_>>());
    out["halfspaces"] = json!(poly
        .halfspaces
        .iter()
        .map(|h| json!({
            "normal_exact": vector_strings(&h.normal),
            "offset_exact": scalar_string(&h.offset),
            "admissible": h.admissible,
            "label": h.label.map(|l| l.display(sys)),
        }))
        .collect::<Vec<_>>());
    out["incidence"] = json!(poly.incidence());
    out
}

/// Fan record: labeled rays, maximal cones with their sortable words, and
/// the adjacency list.
pub fn fan_json(fan: &CambrianFan) -> Value {
    let sys = &fan.data.sys;
    let mut out = header(sys);
    out["coxeter_element"] = json!(fan
        .data
        .c
        .word
        .iter()
        .map(|&s| sys.gen_names[s].clone())
        .collect::<Vec<_>>());
    out["rays"] = json!(fan
        .rays
        .iter()
        .map(|r| json!({
            "coords_exact": vector_strings(&r.dir),
            "label": r.label.map(|l| l.display(sys)),
        }))
        .collect::<Vec<_>>());
    out["cones"] = json!(fan
        .cones
        .iter()
        .map(|c| json!({
            "word": sys.element_string(&fan.data.group.elements[c.sortable]),
            "rays": c.rays,
            "chambers": c
                .chambers
                .iter()
                .map(|&w| sys.element_string(&fan.data.group.elements[w]))
                .collect::<Vec<_>>(),
        }))
        .collect::<Vec<_>>());
    out["adjacency"] = json!(fan
        .adjacency()
        .iter()
        .map(|adj| json!([adj.a, adj.b]))
        .collect::<Vec<_>>());
    out
}

/// Euclidean coordinates from simple-root coordinates: a Cholesky factor of
/// the bilinear form, in floating point, maps x to an isometric embedding.
fn euclidean_embedding(sys: &CoxeterSystem) -> Vec<Vec<f64>> {
    let n = sys.rank();
    let mut g = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            g[i][j] = sys.gram.at(i, j).to_f64();
        }
    }
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let mut sum = g[i][j];
            for k in 0..j {
                sum -= l[i][k] * l[j][k];
            }
            if i == j {
                l[i][j] = sum.sqrt();
            } else {
                l[i][j] = sum / l[j][j];
            }
        }
    }
    l
}

fn embed(l: &[Vec<f64>], x: &[Scalar]) -> Vec<f64> {
    let n = x.len();
    let xf: Vec<f64> = x.iter().map(Scalar::to_f64).collect();
    // coordinates of sum x_i alpha_i in the orthonormal frame: L^T x
    (0..n)
        .map(|r| (r..n).map(|i| l[i][r] * xf[i]).sum())
        .collect()
}

/// OFF mesh of a rank-3 polytope: one polygonal face per half space, with
/// the incident vertices ordered cyclically around the face.
pub fn polytope_off(poly: &Polytope) -> Result<String> {
    let sys = &poly.sys;
    if sys.rank() != 3 {
        return Err(Error::DimensionMismatch(
            "OFF export needs a rank-3 system".into(),
        ));
    }
    let l = euclidean_embedding(sys);
    let points: Vec<Vec<f64>> = poly
        .vertices
        .iter()
        .map(|v| embed(&l, &v.point))
        .collect();
    let inc = poly.incidence();
    let mut faces: Vec<Vec<usize>> = Vec::new();
    for (hi, h) in poly.halfspaces.iter().enumerate() {
        let members: Vec<usize> = (0..points.len()).filter(|&v| inc[v][hi]).collect();
        // order around the face: angle in a basis of the facet plane
        let normal = embed(&l, &h.normal);
        let centroid: Vec<f64> = (0..3)
            .map(|k| members.iter().map(|&v| points[v][k]).sum::<f64>() / members.len() as f64)
            .collect();
        let nn = (normal.iter().map(|c| c * c).sum::<f64>()).sqrt();
        let n_unit: Vec<f64> = normal.iter().map(|c| c / nn).collect();
        let mut u = vec![0.0; 3];
        let seed = if n_unit[0].abs() < 0.9 { 0 } else { 1 };
        let mut e = vec![0.0; 3];
        e[seed] = 1.0;
        let d: f64 = (0..3).map(|k| e[k] * n_unit[k]).sum();
        for k in 0..3 {
            u[k] = e[k] - d * n_unit[k];
        }
        let un = (u.iter().map(|c| c * c).sum::<f64>()).sqrt();
        for c in u.iter_mut() {
            *c /= un;
        }
        let v = [
            n_unit[1] * u[2] - n_unit[2] * u[1],
            n_unit[2] * u[0] - n_unit[0] * u[2],
            n_unit[0] * u[1] - n_unit[1] * u[0],
        ];
        let mut ordered = members;
        ordered.sort_by(|&a, &b| {
            let ang = |w: usize| {
                let d: Vec<f64> = (0..3).map(|k| points[w][k] - centroid[k]).collect();
                let x: f64 = (0..3).map(|k| d[k] * u[k]).sum();
                let y: f64 = (0..3).map(|k| d[k] * v[k]).sum();
                y.atan2(x)
            };
            ang(a).partial_cmp(&ang(b)).unwrap()
        });
        faces.push(ordered);
    }
    let mut off = String::from("OFF\n");
    let edge_count: usize = faces.iter().map(|f| f.len()).sum::<usize>() / 2;
    off.push_str(&format!(
        "{} {} {}\n",
        points.len(),
        faces.len(),
        edge_count
    ));
    for p in &points {
        off.push_str(&format!("{:.12} {:.12} {:.12}\n", p[0], p[1], p[2]));
    }
    for f in &faces {
        off.push_str(&f.len().to_string());
        for v in f {
            off.push_str(&format!(" {v}"));
        }
        off.push('\n');
    }
    Ok(off)
}
