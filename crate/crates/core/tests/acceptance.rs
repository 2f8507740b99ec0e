//! One line per acceptance criterion. Runs without the libtest harness so
//! the verdicts show up in plain `cargo test` output.

mod common;

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use common::{ints, t, types_up_to};
use num_traits::Zero;
use principal_basis::adjoint::{ad_e0_kernel_dims, certify, positive_structure_constants};
use principal_basis::invariants::{g2_generators, D_at};
use principal_basis::linalg::{CartanVec, Q};
use principal_basis::principal::{
    dual_principal_basis, gram_schmidt, principal_basis, principal_basis_opts, proportional, BasisOptions, Route,
};
use principal_basis::rootsys::{build_root_system, LieType};
use principal_basis::Error;

const GOLDEN_BUDGET: Duration = Duration::from_secs(1);
const SWEEP_BUDGET: Duration = Duration::from_secs(60);

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn check(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn cli(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_principal-basis")).args(args).output().expect("binary runs")
}

fn sl3_golden() -> Verdict {
    let start = Instant::now();
    let pb = principal_basis(t("A2")).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let rs = build_root_system(t("A2"));
    check(pb.vectors == ints(&[&[1, 1], &[1, -1]]), format!("got {:?}", pb.vectors))?;
    let ambient = pb.ambient_vectors(&rs);
    let expect: Vec<Vec<Q>> =
        [[1, 0, -1], [1, -2, 1]].iter().map(|r| r.iter().map(|&x| Q::from_integer(x.into())).collect()).collect();
    check(ambient == expect, format!("ambient {ambient:?}"))?;
    check(elapsed < GOLDEN_BUDGET, format!("took {elapsed:?}"))?;
    Ok(format!("e11-e33, e11-2e22+e33 in {elapsed:.2?}"))
}

fn g2_golden() -> Verdict {
    let start = Instant::now();
    let rs = build_root_system(t("G2"));
    let gens = g2_generators();
    let d1 = D_at(&gens.specs()[0], rs.rho_check(), &rs).map_err(|e| e.to_string())?;
    let d2 = D_at(&gens.specs()[1], rs.rho_check(), &rs).map_err(|e| e.to_string())?;
    check(d2.is_proportional(&CartanVec::from_ints(&[2425, 1383])), format!("Dp2(rho^vee) = {d2}"))?;
    let (ortho, _) = gram_schmidt(&[d1, d2], rs.form()).map_err(|e| e.to_string())?;
    check(ortho[1].is_proportional(&CartanVec::from_ints(&[-3, 1])), format!("h2 = {}", ortho[1]))?;
    check(rs.form().cartan(&ortho[0], &ortho[1]).is_zero(), "B(h1, h2) != 0")?;
    let elapsed = start.elapsed();
    check(elapsed < GOLDEN_BUDGET, format!("took {elapsed:?}"))?;
    Ok(format!("Dp2 ~ 2425a1v+1383a2v, h2 ~ -3a1v+a2v, B(h1,h2)=0 in {elapsed:.2?}"))
}

fn sweep_types() -> Vec<LieType> {
    let mut types = types_up_to(7);
    types.push(t("D8"));
    types
}

fn certification_sweep() -> Verdict {
    let start = Instant::now();
    let types = sweep_types();
    for &lt in &types {
        let rs = build_root_system(lt);
        let pb = principal_basis(lt).map_err(|e| format!("{lt}: {e}"))?;
        let report = certify(&pb, &rs, &positive_structure_constants(&rs));
        check(report.certified(), format!("{lt}: {:?}", report.failures))?;
    }
    let elapsed = start.elapsed();
    check(elapsed < SWEEP_BUDGET, format!("took {elapsed:?}"))?;
    Ok(format!("{} types certified in {elapsed:.2?}", types.len()))
}

fn kernel_law() -> Verdict {
    let types = types_up_to(8);
    let mut checked = 0;
    for &lt in &types {
        let rs = build_root_system(lt);
        let sc = positive_structure_constants(&rs);
        let max = *rs.exponents().last().unwrap() as usize;
        for m in 1..=max + 1 {
            let expected = rs.exponents().iter().filter(|&&k| (k as usize) < m).count();
            let got = ad_e0_kernel_dims(&rs, &sc, m).dim;
            check(got == expected, format!("{lt} m={m}: {got} != {expected}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (type, m) pairs over {} types", types.len()))
}

fn dual_routes() -> Verdict {
    let cases = ["B2", "B3", "B4", "C2", "C3", "C4", "A2", "A3", "A4", "D4", "D5", "G2"];
    for s in cases {
        let lt = t(s);
        let dual = dual_principal_basis(lt).map_err(|e| e.to_string())?.as_dual_type_basis();
        let direct = principal_basis(lt.langlands_dual()).map_err(|e| e.to_string())?;
        check(dual.exponent_labels == direct.exponent_labels, format!("{s}: exponent labels differ"))?;
        for (a, b) in dual.vectors.iter().zip(&direct.vectors) {
            check(proportional(a, b), format!("{s}: {a:?} not proportional to {b:?}"))?;
        }
    }
    Ok(format!("{} types", cases.len()))
}

fn d_even_sigma() -> Verdict {
    for s in ["D4", "D6"] {
        let lt = t(s);
        let l = lt.rank();
        let rs = build_root_system(lt);
        let pb = principal_basis(lt).map_err(|e| e.to_string())?;
        let amb = pb.ambient_vectors(&rs);
        let minus = l / 2 - 1;
        check(
            !amb[minus][l - 1].is_zero() && amb[minus][..l - 1].iter().all(Zero::is_zero),
            format!("{s}: vector {minus} is not along e_l"),
        )?;
        for (i, v) in amb.iter().enumerate().filter(|(i, _)| *i != minus) {
            check(v[l - 1].is_zero(), format!("{s}: vector {i} leaves <e_1..e_(l-1)>"))?;
        }
        let twins: Vec<usize> = (0..l).filter(|&i| pb.exponent_labels[i] as usize == l - 1).collect();
        check(twins.len() == 2, format!("{s}: exponent {} has multiplicity {}", l - 1, twins.len()))?;
        let (a, b) = (&pb.rational_vectors()[twins[0]], &pb.rational_vectors()[twins[1]]);
        check(rs.coroot_gram().bilinear(a, b).is_zero(), format!("{s}: equal-exponent vectors not orthogonal"))?;
    }
    Ok("D4, D6".into())
}

fn exponent_oracle() -> Verdict {
    let mut types = types_up_to(8);
    types.extend((9..=12).flat_map(|n| ["A", "B", "C", "D"].map(|f| t(&format!("{f}{n}")))));
    for &lt in &types {
        let rs = build_root_system(lt);
        let from_heights = rs.exponents_from_heights().map_err(|e| e.to_string())?;
        check(from_heights == lt.exponent_table(), format!("{lt}: {from_heights:?}"))?;
        let mut repeated: Vec<u32> = from_heights.windows(2).filter(|w| w[0] == w[1]).map(|w| w[0]).collect();
        repeated.dedup();
        let expected = if lt.is_d_even() { vec![lt.rank() as u32 - 1] } else { vec![] };
        check(repeated == expected, format!("{lt}: repeated exponents {repeated:?}"))?;
    }
    Ok(format!("{} types", types.len()))
}

fn route_independence() -> Verdict {
    for s in ["A2", "A3", "B2", "B3", "C3"] {
        let a = principal_basis_opts(t(s), &BasisOptions::with_route(Route::Classical)).map_err(|e| e.to_string())?;
        let b = principal_basis_opts(t(s), &BasisOptions::with_route(Route::Orbit)).map_err(|e| e.to_string())?;
        check(a.vectors == b.vectors, format!("{s}: {:?} vs {:?}", a.vectors, b.vectors))?;
    }
    let opts = BasisOptions { seed_weight: Some(0), ..BasisOptions::with_route(Route::Orbit) };
    match principal_basis_opts(t("D4"), &opts) {
        Err(Error::Dependent { label, .. }) if label.contains("degree 4") => {}
        other => return Err(format!("D4 seed e*1: {other:?}")),
    }
    let o = cli(&["basis", "D4", "--route", "orbit", "--seed-weight", "1"]);
    check(o.status.code() == Some(3), format!("D4 seed e*1 exit {:?}", o.status.code()))?;
    Ok("A2 A3 B2 B3 C3 agree; D4 seed e*1 exits 3".into())
}

fn negative_controls() -> Verdict {
    let o = cli(&["basis", "C3", "--format", "json"]);
    let mut doc: serde_json::Value = serde_json::from_slice(&o.stdout).map_err(|e| e.to_string())?;
    let h1 = doc["basis"][0]["coords"].clone();
    let h2 = doc["basis"][1]["coords"].clone();
    let sum: Vec<String> = h1
        .as_array()
        .unwrap()
        .iter()
        .zip(h2.as_array().unwrap())
        .map(|(a, b)| {
            (a.as_str().unwrap().parse::<i64>().unwrap() + b.as_str().unwrap().parse::<i64>().unwrap()).to_string()
        })
        .collect();
    doc["basis"][1]["coords"] = serde_json::json!(sum);
    let path = std::env::temp_dir().join(format!("principal-basis-acceptance-{}.json", std::process::id()));
    std::fs::write(&path, doc.to_string()).map_err(|e| e.to_string())?;
    let out = cli(&["certify", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    check(out.status.code() == Some(4), format!("perturbed basis exit {:?}", out.status.code()))?;

    let rs = build_root_system(t("A3"));
    let vs = [
        CartanVec::from_ints(&[1, -1, 0, 0]),
        CartanVec::from_ints(&[0, 1, -1, 0]),
        CartanVec::from_ints(&[2, -1, -1, 0]),
    ];
    match gram_schmidt(&vs, rs.form()) {
        Err(Error::DependentInput { index: 2 }) => {}
        other => return Err(format!("dependent input: {other:?}")),
    }
    Ok("perturbed C3 basis exits 4; dependent input rejected at index 2".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("sl3 golden basis", sl3_golden),
        ("G2 golden differential and orthogonalization", g2_golden),
        ("certification sweep, rank <= 7 plus D8", certification_sweep),
        ("kernel-dimension law", kernel_law),
        ("dual-route equivalence", dual_routes),
        ("D_even sigma refinement", d_even_sigma),
        ("exponent oracle", exponent_oracle),
        ("route independence", route_independence),
        ("negative controls", negative_controls),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({why})", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
