//! Deterministic serialization of the computed objects.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::IntMat;
use crate::icosa::CLASS_NAMES;
use crate::monodromy::{Convention, SL2Mat, REPRESENTATIVE_NAMES};
use crate::replat::{
    build_lattice, character_of, decompose_character, irreducible_table, permutation_character, ClassFunction, LatticeKind,
    IRREDUCIBLE_NAMES,
};
use crate::{Error, Result};

use super::context::Context;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EmitObject {
    Dodecahedron,
    Group,
    Complex,
    Form,
    Characters,
    Hom,
    Monodromy,
    Cosets,
    Cusps,
}

impl EmitObject {
    pub const ALL: [EmitObject; 9] = [
        EmitObject::Dodecahedron,
        EmitObject::Group,
        EmitObject::Complex,
        EmitObject::Form,
        EmitObject::Characters,
        EmitObject::Hom,
        EmitObject::Monodromy,
        EmitObject::Cosets,
        EmitObject::Cusps,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EmitObject::Dodecahedron => "dodecahedron",
            EmitObject::Group => "group",
            EmitObject::Complex => "complex",
            EmitObject::Form => "form",
            EmitObject::Characters => "characters",
            EmitObject::Hom => "hom",
            EmitObject::Monodromy => "monodromy",
            EmitObject::Cosets => "cosets",
            EmitObject::Cusps => "cusps",
        }
    }
}

impl fmt::Display for EmitObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EmitObject {
    type Err = Error;
    fn from_str(s: &str) -> Result<EmitObject> {
        EmitObject::ALL.into_iter().find(|o| o.name() == s).ok_or_else(|| Error::InvalidArgument(format!("unknown object {s}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Format> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::InvalidArgument(format!("unknown format {s}"))),
        }
    }
}

pub fn emit(ctx: &Context, object: EmitObject, format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let v = to_json(ctx, object)?;
            Ok(serde_json::to_string_pretty(&v).expect("json value serializes") + "\n")
        }
        Format::Csv => to_csv(ctx, object),
    }
}

fn value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn strings(c: &ClassFunction) -> Vec<String> {
    c.values.iter().map(ToString::to_string).collect()
}

fn sl2_rows(m: &SL2Mat) -> [String; 4] {
    [m.a.to_string(), m.b.to_string(), m.c.to_string(), m.d.to_string()]
}

pub fn to_json(ctx: &Context, object: EmitObject) -> Result<Value> {
    let (m, g) = (&ctx.icosa.model, &ctx.icosa.group);
    Ok(match object {
        EmitObject::Dodecahedron => json!({
            "vertices": m.vertices.iter().map(|p| p.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "edges": m.edges,
            "faces": m.faces,
            "antipode": m.antipode,
            "rotation": m.rotation,
            "cubes": ctx.icosa.cubes.cubes,
            "vertex_to_pair": ctx.icosa.cubes.vertex_to_pair,
            "tetrads": { "cube": ctx.icosa.split.cube, "E": ctx.icosa.split.e, "iota_E": ctx.icosa.split.iota_e },
        }),
        EmitObject::Group => json!({
            "order": g.order(),
            "class_names": CLASS_NAMES,
            "class_sizes": g.class_sizes(),
            "generators": g.generators,
            "elements": g.elements.iter().enumerate().map(|(i, e)| json!({
                "index": i, "order": e.order, "class": e.class, "vertices": e.vertices, "faces": e.faces, "cubes": e.cubes,
            })).collect::<Vec<_>>(),
        }),
        EmitObject::Complex => {
            let s = &ctx.surface;
            let (a, b, c) = s.counts();
            json!({
                "counts": [a, b, c],
                "euler_characteristic": s.euler_characteristic(),
                "cells0": s.cells0,
                "cells1": value(&s.cells1),
                "cells2": s.cells2,
                "boundary1": value(&s.boundary1),
                "boundary2": value(&s.boundary2),
            })
        }
        EmitObject::Form => json!({
            "basis": "delta_x for x in R, then gamma_x for x in R",
            "R": ctx.surface.r,
            "matrix": value(&ctx.homology.form),
        }),
        EmitObject::Characters => {
            let table = irreducible_table(g);
            let faces = permutation_character(|x| g.elements[x].faces.clone(), g);
            let lattices: Vec<Value> = [LatticeKind::Vo, LatticeKind::Wo, LatticeKind::Eo, LatticeKind::Wedge2ZK, LatticeKind::Wedge2Wo]
                .iter()
                .map(|&k| {
                    let chi = character_of(&build_lattice(k, g), g);
                    Ok(json!({ "lattice": k.name(), "values": strings(&chi), "decomposition": decompose_character(&chi, g)? }))
                })
                .collect::<Result<_>>()?;
            json!({
                "class_names": CLASS_NAMES,
                "class_sizes": g.class_sizes(),
                "irreducibles": table.iter().zip(IRREDUCIBLE_NAMES).map(|(c, n)| json!({ "name": n, "values": strings(c) })).collect::<Vec<_>>(),
                "faces": { "values": strings(&faces), "decomposition": decompose_character(&faces, g)? },
                "lattices": lattices,
            })
        }
        EmitObject::Hom => {
            let v = &ctx.vhom;
            let p = v.normalized_pairing(&ctx.homology)?;
            json!({
                "basis": "(U_edge, U_trc)",
                "U_edge": value(&v.big_u_edge),
                "U_trc": value(&v.big_u_trc),
                "cokernel": v.class_cokernel.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "scale": v.scale.to_string(),
                "normalized_pairing": p.iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
            })
        }
        EmitObject::Monodromy => {
            let mut out = serde_json::Map::new();
            for c in Convention::ALL {
                out.insert(c.to_string(), json!({ "basis": c.basis_description(), "table": ctx.monodromy.table.in_convention(c) }));
            }
            Value::Object(out)
        }
        EmitObject::Cosets => json!({
            "representative_names": REPRESENTATIVE_NAMES,
            "certificate": value(&ctx.cosets),
        }),
        EmitObject::Cusps => json!({
            "cusps": value(&ctx.cusps),
            "points": ctx.cusps.cusps.iter().map(|c| c.point_string()).collect::<Vec<_>>(),
            "elliptic": value(&ctx.elliptic),
        }),
    })
}

fn csv_err(e: impl fmt::Display) -> Error {
    Error::InvalidArgument(format!("csv: {e}"))
}

fn matrix_rows(m: &IntMat) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(ToString::to_string).collect()).collect()
}

pub fn to_csv(ctx: &Context, object: EmitObject) -> Result<String> {
    let (m, g) = (&ctx.icosa.model, &ctx.icosa.group);
    let mut rows: Vec<Vec<String>> = Vec::new();
    let join = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
    match object {
        EmitObject::Dodecahedron => {
            rows.push(["vertex", "x", "y", "z", "antipode"].map(String::from).to_vec());
            for (i, p) in m.vertices.iter().enumerate() {
                let mut r = vec![i.to_string()];
                r.extend(p.iter().map(ToString::to_string));
                r.push(m.antipode[i].to_string());
                rows.push(r);
            }
        }
        EmitObject::Group => {
            rows.push(["element", "order", "class", "cubes"].map(String::from).to_vec());
            for (i, e) in g.elements.iter().enumerate() {
                rows.push(vec![i.to_string(), e.order.to_string(), CLASS_NAMES[e.class].to_string(), join(&e.cubes)]);
            }
        }
        EmitObject::Complex => {
            rows.push(["matrix", "row", "col", "value"].map(String::from).to_vec());
            for (name, b) in [("boundary1", &ctx.surface.boundary1), ("boundary2", &ctx.surface.boundary2)] {
                for i in 0..b.rows() {
                    for j in 0..b.cols() {
                        let x = b.get(i, j);
                        if !num_traits::Zero::is_zero(x) {
                            rows.push(vec![name.into(), i.to_string(), j.to_string(), x.to_string()]);
                        }
                    }
                }
            }
        }
        EmitObject::Form => rows = matrix_rows(&ctx.homology.form),
        EmitObject::Characters => {
            let mut header = vec!["character".to_string()];
            header.extend(CLASS_NAMES.iter().map(|s| s.to_string()));
            rows.push(header);
            for (c, n) in irreducible_table(g).iter().zip(IRREDUCIBLE_NAMES) {
                rows.push(std::iter::once(n.to_string()).chain(strings(c)).collect());
            }
            let faces = permutation_character(|x| g.elements[x].faces.clone(), g);
            rows.push(std::iter::once("faces".to_string()).chain(strings(&faces)).collect());
        }
        EmitObject::Hom => {
            rows.push(["map", "row", "c0", "c1", "c2", "c3"].map(String::from).to_vec());
            for (name, u) in [("U_edge", &ctx.vhom.big_u_edge), ("U_trc", &ctx.vhom.big_u_trc)] {
                for (i, r) in matrix_rows(u).into_iter().enumerate() {
                    rows.push([vec![name.to_string(), i.to_string()], r].concat());
                }
            }
        }
        EmitObject::Monodromy => {
            rows.push(["convention", "matrix", "a", "b", "c", "d"].map(String::from).to_vec());
            for c in Convention::ALL {
                let t = ctx.monodromy.table.in_convention(c);
                for (name, mat) in [
                    ("rho_edge", &t.rho_edge),
                    ("rho_trc", &t.rho_trc),
                    ("rho_zero", &t.rho_zero),
                    ("rho_minus_one", &t.rho_minus_one),
                    ("rho_edge_trc", &t.rho_edge_trc),
                ] {
                    rows.push([vec![c.to_string(), name.to_string()], sl2_rows(mat).to_vec()].concat());
                }
            }
        }
        EmitObject::Cosets => {
            rows.push(["multiplier", "from", "to", "sign", "word", "holds"].map(String::from).to_vec());
            for w in &ctx.cosets.witnesses {
                let word: Vec<String> = w.word.iter().map(|l| value(l).as_str().unwrap_or_default().to_string()).collect();
                rows.push(vec![
                    value(&w.multiplier).as_str().unwrap_or_default().to_string(),
                    REPRESENTATIVE_NAMES[w.from].to_string(),
                    REPRESENTATIVE_NAMES[w.to].to_string(),
                    w.sign.to_string(),
                    word.join(" "),
                    w.holds.to_string(),
                ]);
            }
        }
        EmitObject::Cusps => {
            rows.push(["cusp", "point", "width", "orbit"].map(String::from).to_vec());
            for (i, c) in ctx.cusps.cusps.iter().enumerate() {
                let orbit: Vec<&str> = c.orbit.iter().map(|&k| REPRESENTATIVE_NAMES[k]).collect();
                rows.push(vec![i.to_string(), c.point_string(), c.width.to_string(), orbit.join(" ")]);
            }
        }
    }
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    for r in rows {
        w.write_record(&r).map_err(csv_err)?;
    }
    String::from_utf8(w.into_inner().map_err(csv_err)?).map_err(csv_err)
}
