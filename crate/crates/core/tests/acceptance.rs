//! Acceptance suite: one line per criterion, exact comparisons only.
//!
//! Runs without the libtest harness so the verdict lines print in order.

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;

use winger_core::arith::IntMat;
use winger_core::certify::{registry, run_check, Context, Options, Status};
use winger_core::monodromy::{gamma1_membership, Convention, SL2Mat};

struct Criterion {
    title: &'static str,
    checks: &'static [&'static str],
    extra: fn(&Context) -> Result<(), String>,
}

fn sl2(a: i64, b: i64, c: i64, d: i64) -> SL2Mat {
    SL2Mat::new(a, b, c, d).unwrap()
}

fn ensure(cond: bool, msg: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.to_string())
    }
}

fn c1(ctx: &Context) -> Result<(), String> {
    let s = &ctx.surface;
    ensure(s.counts() == (30, 60, 12), "cell counts")?;
    ensure(s.euler_characteristic() == -18, "euler characteristic")?;
    ensure((&s.boundary1 * &s.boundary2).is_zero(), "d1 d2 != 0")?;
    let h = &ctx.homology;
    ensure((h.rank_h0, h.rank_h1, h.rank_h2) == (1, 20, 1), "betti numbers")?;
    ensure(h.torsion_h1.is_empty(), "torsion in H_1")
}

fn c2(ctx: &Context) -> Result<(), String> {
    let o = ctx.surface.orbit_structure(&ctx.icosa.group);
    ensure(o.orbits0 == [(30, 2)], "0-cells")?;
    ensure(o.oriented_orbits1 == [60, 60], "oriented 1-cells")?;
    ensure(o.orbits2 == [(12, 5)], "2-cells")
}

fn c3(ctx: &Context) -> Result<(), String> {
    let (s, h) = (&ctx.surface, &ctx.homology);
    for a in &h.cycles.delta_trc {
        for b in &h.cycles.delta_trc {
            ensure(s.pairing(a, b) == 0, "<delta_x, delta_x'> != 0")?;
        }
    }
    for a in &h.cycles.delta_edge {
        for b in &h.cycles.delta_edge {
            ensure(s.pairing(a, b) == 0, "<delta_y, delta_y'> != 0")?;
        }
    }
    for a in &h.cycles.delta_trc {
        for b in &h.cycles.delta_edge {
            ensure((-1..=1).contains(&s.pairing(a, b)), "<delta_x, delta_y> outside {0, 1, -1}")?;
        }
    }
    ensure(h.form.transpose() == -&h.form, "form not alternating")?;
    ensure(h.form.det() == BigInt::from(1), "form not unimodular")
}

fn c4(ctx: &Context) -> Result<(), String> {
    let sp = &ctx.special;
    let split = &ctx.icosa.split;
    for (x, &v) in sp.edge_vs_trc.iter().enumerate() {
        ensure(v == 3 * split.membership(x), "u_edge against delta_x")?;
    }
    let m = ctx.surface.model();
    for (y, &v) in sp.trc_vs_edge.iter().enumerate() {
        let d = m.darts[y];
        ensure(v == split.membership(d.head) - split.membership(d.tail), "u_trc against delta_y")?;
        ensure((-1..=1).contains(&v), "u_trc value outside {0, 1, -1}")?;
    }
    Ok(())
}

fn c5(ctx: &Context) -> Result<(), String> {
    let v = &ctx.vhom;
    ensure(v.hom_b1.rank() == 0, "Hom(Vo, B_1) != 0")?;
    ensure(v.hom_z1.rank() == 2 && v.z1_is_spanned(), "Hom(Vo, Z_1)")?;
    ensure(v.class_cokernel == [BigInt::from(3)], "cokernel is not Z/3")?;
    ensure(v.is_basis(), "(U_edge, U_trc) is not a basis")
}

fn no_extra(_: &Context) -> Result<(), String> {
    Ok(())
}

fn c8(ctx: &Context) -> Result<(), String> {
    ensure(ctx.k6.rank_h1 == 10, "rank H^1(K6)")?;
    ensure(ctx.mod3.len() == 13 && ctx.mod3.iter().all(|w| w.holds), "mod 3 witnesses")?;
    ensure(ctx.splits.iter().all(|c| c.onto), "splitting")
}

fn c9(ctx: &Context) -> Result<(), String> {
    let t = &ctx.monodromy.table;
    ensure(t.rho_edge == sl2(1, -3, 0, 1), &format!("rho_edge = {}", t.rho_edge))?;
    ensure(t.rho_trc == sl2(1, 0, 1, 1), &format!("rho_trc = {}", t.rho_trc))?;
    ensure(t.rho_zero == sl2(-2, 3, -1, 1), &format!("rho_0 = {}", t.rho_zero))?;
    ensure(t.rho_zero.pow(3).is_identity() && !t.rho_zero.is_identity(), "rho_0 order")?;
    ensure(t.rho_minus_one.is_identity(), "rho_-1")?;
    ensure(t.rho_edge_trc == sl2(-2, -3, 1, 1), "rho_edge rho_trc")?;
    ensure(t.rho_edge_trc.pow(3).is_identity(), "rho_edge rho_trc order")?;
    ensure(ctx.monodromy.hom_vo_eo_rank == 0, "Hom(Vo, Eo) != 0")
}

fn c10(ctx: &Context) -> Result<(), String> {
    let h = &ctx.homology;
    for rho in [&ctx.monodromy.rho_edge_h1, &ctx.monodromy.rho_trc_h1] {
        ensure(&(&rho.transpose() * &h.form) * rho == h.form, "not symplectic")?;
        let nil = rho - &IntMat::identity(h.rank());
        ensure((&nil * &nil).is_zero(), "(rho - 1)^2 != 0")?;
        ensure(h.action.iter().all(|a| a * rho == rho * a), "not equivariant")?;
    }
    Ok(())
}

fn c11(ctx: &Context) -> Result<(), String> {
    let c = &ctx.cosets;
    ensure((c.sl2_f3_order, c.image_order, c.gamma1_index) == (24, 3, 8), "index computation")?;
    ensure(c.closure_holds && c.eight_inequivalent && c.relations_hold, "coset closure")?;
    let t = &ctx.monodromy.table;
    ensure(gamma1_membership(&t.rho_edge, Convention::Standard) && gamma1_membership(&t.rho_trc, Convention::Standard), "membership")
}

fn c12(ctx: &Context) -> Result<(), String> {
    let widths: Vec<usize> = ctx.cusps.cusps.iter().map(|c| c.width).collect();
    ensure(widths == [3, 1], "cusp widths")?;
    ensure(ctx.cusps.cusps[0].orbit.contains(&0), "identity coset in the width-3 orbit")?;
    ensure(ctx.cusps.cusps[1].orbit == [3], "width-1 orbit is {S}")?;
    ensure(ctx.elliptic.fixed == 1, "elliptic fixed points")
}

fn c13(ctx: &Context) -> Result<(), String> {
    let p = ctx.vhom.normalized_pairing(&ctx.homology).map_err(|e| e.to_string())?;
    ensure(p[0][1] == BigInt::from(1).into(), "U_edge . U_trc != 1")
}

fn c14(ctx: &Context) -> Result<(), String> {
    let swapped = Context::build(Options { swap_tetrads: true, ..Options::default() }).map_err(|e| e.to_string())?;
    ensure(swapped.monodromy.table.rho_edge == ctx.monodromy.table.rho_edge, "rho_edge depends on E")?;
    ensure(swapped.monodromy.table.rho_trc == ctx.monodromy.table.rho_trc, "rho_trc depends on E")?;
    let r = ctx.monodromy.table.in_convention(Convention::Repbas);
    ensure(r.rho_edge == sl2(1, 0, 3, 1) && r.rho_trc == sl2(1, -1, 0, 1), "repbas matrices")?;
    ensure(gamma1_membership(&r.rho_edge, Convention::Repbas) && gamma1_membership(&r.rho_trc, Convention::Repbas), "repbas membership")
}

fn criteria() -> Vec<Criterion> {
    vec![
        Criterion {
            title: "surface combinatorics and homology",
            checks: &["surface.counts", "surface.ddzero", "surface.homology"],
            extra: c1,
        },
        Criterion { title: "orbit structure of cells", checks: &["surface.orbits"], extra: c2 },
        Criterion { title: "intersection tables and form", checks: &["surface.intersections", "surface.form"], extra: c3 },
        Criterion { title: "special intersection values", checks: &["surface.special_intersections"], extra: c4 },
        Criterion { title: "equivariant maps from Vo", checks: &["surface.vhom", "surface.divisibility"], extra: c5 },
        Criterion {
            title: "character suite",
            checks: &["replat.characters.table", "replat.characters.faces", "replat.characters.cycles"],
            extra: no_extra,
        },
        Criterion { title: "principality", checks: &["replat.principal"], extra: no_extra },
        Criterion {
            title: "Lagrangian identifications",
            checks: &["surface.trc_lagrangian", "surface.k6", "surface.edge_lagrangian", "surface.splitting", "surface.mod3"],
            extra: c8,
        },
        Criterion { title: "monodromy matrices", checks: &["monodromy.matrices", "monodromy.trivial_at_minus_one"], extra: c9 },
        Criterion { title: "Picard-Lefschetz operators", checks: &["monodromy.picard_lefschetz"], extra: c10 },
        Criterion { title: "Gamma_1(3) certificate", checks: &["monodromy.cosets", "monodromy.gamma1_words"], extra: c11 },
        Criterion { title: "cusps and orbifold point", checks: &["monodromy.cusps", "monodromy.elliptic"], extra: c12 },
        Criterion { title: "symplectic normalization", checks: &["surface.symplectic_scale"], extra: c13 },
        Criterion { title: "convention robustness", checks: &["conventions.robustness", "monodromy.conventions"], extra: c14 },
    ]
}

fn main() -> ExitCode {
    let start = Instant::now();
    let ctx = match Context::build(Options::default()) {
        Ok(c) => c,
        Err(e) => {
            println!("FAIL  construction: {e}");
            return ExitCode::FAILURE;
        }
    };
    let defs = registry();
    let mut failed = 0;
    for (i, c) in criteria().iter().enumerate() {
        let mut problems = Vec::new();
        for id in c.checks {
            match defs.iter().find(|d| d.id == *id) {
                Some(d) => {
                    if run_check(d, &ctx, false).status == Status::Fail {
                        problems.push(format!("check {id} failed"));
                    }
                }
                None => problems.push(format!("check {id} missing")),
            }
        }
        if let Err(e) = (c.extra)(&ctx) {
            problems.push(e);
        }
        let verdict = if problems.is_empty() { "PASS" } else { "FAIL" };
        println!(
            "{verdict}  criterion {:>2}: {}{}",
            i + 1,
            c.title,
            if problems.is_empty() { String::new() } else { format!(" ({})", problems.join("; ")) }
        );
        if !problems.is_empty() {
            failed += 1;
        }
    }
    let elapsed = start.elapsed();
    let in_time = elapsed.as_secs() < 60;
    println!("{}  total time {:.2}s (limit 60s)", if in_time { "PASS" } else { "FAIL" }, elapsed.as_secs_f64());
    println!("{} of 14 criteria passed", 14 - failed);
    if failed == 0 && in_time {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
