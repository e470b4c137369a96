//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use stp_core::complexes::{library, reduced_chains, simplicial_chains, to_simplicial_set, SimplicialComplex};
use stp_core::doldkan::{free_module, homotopy_groups, moore_complex, normalized_chain_map, normalized_chains, set_chains};
use stp_core::hocolim::{
    compare_chain_vs_space, disk_poset, h0_diagram, kan_extension_check, restriction_invariance, simplicial_replacement,
    space_hocolim_chains, svk_check,
};
use stp_core::homalg::{
    betti_mod_p, determinant, homology, is_quasi_iso, smith_normal_form, AbGroup, ChainComplex, IntMatrix,
};
use stp_core::symprod::{stabilization_map, sym_finite, symmetric_power, symmetric_power_size};

type Outcome = Result<String, String>;

const SPACES: &[&str] = &["circle3", "circle6", "sphere_min", "sphere_oct", "torus9", "rp2_6", "klein", "wedge_circles(3)"];
const DEFAULT_CELL_LIMIT: u128 = 200_000;

fn coefficients() -> Vec<AbGroup> {
    ["Z", "Z/2", "Z/3", "Z+Z/2"].iter().map(|s| s.parse().expect("valid group")).collect()
}

fn space(name: &str) -> SimplicialComplex {
    library::by_name(name).expect("library space")
}

fn show(h: &[AbGroup]) -> String {
    let parts: Vec<String> = h.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

fn mismatch(what: &str, got: &[AbGroup], want: &[AbGroup]) -> String {
    format!("{what}: got {} expected {}", show(got), show(want))
}

fn reduced_homology(k: &SimplicialComplex, a: &AbGroup, max_degree: usize) -> Vec<AbGroup> {
    let top = max_degree + 1;
    homology(&reduced_chains(k).padded(top).truncated(top), a, max_degree).expect("degrees in range")
}

fn dold_thom_matrix() -> Outcome {
    let mut checked = 0;
    for name in SPACES {
        let k = space(name);
        let set = to_simplicial_set(&k, 4);
        for a in coefficients() {
            let pi = homotopy_groups(&free_module(&set, &a), 3).map_err(|e| e.to_string())?;
            let h = reduced_homology(&k, &a, 3);
            if pi != h {
                return Err(mismatch(&format!("{name} with {a}"), &pi, &h));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} space/coefficient pairs agree through degree 3"))
}

fn configuration_lemma() -> Outcome {
    let mut checked = 0;
    for points in 0..=3 {
        for a in ["Z/2", "Z/3", "Z/4"] {
            let a: AbGroup = a.parse().expect("valid group");
            let (_, report) = sym_finite(points, &a).map_err(|e| e.to_string())?;
            if !report.passed() {
                return Err(format!("|I| = {points}, A = {a}: {report:?}"));
            }
            checked += report.configurations;
        }
    }
    Ok(format!("{checked} configurations checked in both directions"))
}

fn normalization() -> Outcome {
    let mut checked = 0;
    for name in SPACES {
        let set = to_simplicial_set(&space(name), 4);
        for a in coefficients() {
            let module = free_module(&set, &a);
            let moore = moore_complex(&module, 3).map_err(|e| e.to_string())?;
            let normalized = normalized_chains(&module, 3).map_err(|e| e.to_string())?;
            for c in [&moore, &normalized] {
                c.check_square_zero().map_err(|e| e.to_string())?;
            }
            let (hm, hn) = (homology(&moore, &a, 3).unwrap(), homology(&normalized, &a, 3).unwrap());
            if hm != hn {
                return Err(mismatch(&format!("{name} with {a}"), &hm, &hn));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} pairs: Moore and normalized homology agree through degree 3"))
}

fn svk_pipeline() -> Outcome {
    let circle = disk_poset(&space("circle6"), 2).map_err(|e| e.to_string())?;
    let report = svk_check(&circle.diagram);
    if !report.all_certified() {
        return Err(format!("hexagon: {} refuted, {} inconclusive", report.refuted, report.inconclusive));
    }
    for a in [AbGroup::integers(), AbGroup::cyclic(2)] {
        let want = vec![AbGroup::zero(), a.clone()];
        let space_level = homology(&space_hocolim_chains(&circle.diagram, &a, 1).unwrap(), &a, 1).unwrap();
        let h0 = homology(&simplicial_replacement(&h0_diagram(&circle.diagram, &a).unwrap(), 1).unwrap(), &a, 1).unwrap();
        if space_level != want || h0 != want {
            return Err(mismatch(&format!("hexagon with {a}"), &space_level, &want) + "; " + &mismatch("H~_0", &h0, &want));
        }
    }
    let start = Instant::now();
    let sphere = space("sphere_min");
    let mut chosen = None;
    for level in 0..=2 {
        let m = sphere.subdivided(level);
        let poset = disk_poset(&m, 2).map_err(|e| e.to_string())?;
        if svk_check(&poset.diagram).all_certified() {
            chosen = Some((level, poset));
            break;
        }
    }
    let (level, poset) = chosen.ok_or("no subdivision level up to 2 passes the cover check")?;
    for a in [AbGroup::integers(), AbGroup::cyclic(2)] {
        let want = vec![AbGroup::zero(), AbGroup::zero(), a.clone()];
        let space_level = homology(&space_hocolim_chains(&poset.diagram, &a, 2).unwrap(), &a, 2).unwrap();
        let h0 = homology(&simplicial_replacement(&h0_diagram(&poset.diagram, &a).unwrap(), 2).unwrap(), &a, 2).unwrap();
        if space_level != want || h0 != want {
            return Err(mismatch(&format!("sphere with {a}"), &space_level, &want) + "; " + &mismatch("H~_0", &h0, &want));
        }
    }
    Ok(format!(
        "hexagon: {} objects, all {} simplices certified; sphere passes at subdivision level {level} ({} objects, {:.1?})",
        circle.category().object_count(),
        report.certified,
        poset.category().object_count(),
        start.elapsed()
    ))
}

fn chain_vs_space() -> Outcome {
    let mut notes = Vec::new();
    for name in ["circle3", "circle6"] {
        let poset = disk_poset(&space(name), 2).map_err(|e| e.to_string())?;
        for a in [AbGroup::integers(), AbGroup::cyclic(2)] {
            let r = compare_chain_vs_space(&poset.diagram, &a, 2).map_err(|e| e.to_string())?;
            if !r.agree {
                return Err(mismatch(&format!("{name} with {a}"), &r.chain_level, &r.space_level));
            }
            if a.rank() == 1 {
                notes.push(format!("{name} {}", show(&r.chain_level)));
            }
        }
    }
    Ok(format!("both pipelines agree through degree 2: {}", notes.join(", ")))
}

fn corollary_checks() -> Outcome {
    for a in [AbGroup::integers(), AbGroup::cyclic(2)] {
        for m in 1..=5 {
            let r = kan_extension_check(m, &a, 2).map_err(|e| e.to_string())?;
            if !r.star_matches {
                return Err(mismatch(&format!("star with m = {m}, A = {a}"), &r.star_homology, &r.expected));
            }
            if m <= 4 && !r.finality.all_certified() {
                return Err(format!("star for m = {m} is not certified final"));
            }
        }
    }
    for name in ["circle3", "circle6"] {
        let r = restriction_invariance(&space(name), &AbGroup::integers(), &[2, 3], 2).map_err(|e| e.to_string())?;
        if !r.agree {
            return Err(mismatch(&format!("{name} k = 2 vs 3"), &r.levels[0].homology, &r.levels[1].homology));
        }
    }
    Ok("star homotopy colimits are A^(m-1) for m <= 5, stars final for m <= 4, k = 2 and 3 agree".into())
}

fn symmetric_powers() -> Outcome {
    let start = Instant::now();
    let z = AbGroup::integers();
    let o = AbGroup::zero();
    let circle = to_simplicial_set(&space("circle3"), 4);
    let sphere = to_simplicial_set(&space("sphere_min"), 5);
    let sp2c = symmetric_power(&circle, 2, 2).map_err(|e| e.to_string())?;
    let h = set_chains(sp2c.set(), false, 2).unwrap().homology(1).unwrap();
    let want = vec![z.clone(), z.clone()];
    if h != want {
        return Err(mismatch("SP^2 of the circle", &h, &want));
    }
    // degree 2 of SP^2 of the circle needs chains through degree 3
    let h2 = set_chains(symmetric_power(&circle, 2, 3).unwrap().set(), false, 3).unwrap().homology(2).unwrap();
    if h2[2] != o {
        return Err(mismatch("SP^2 of the circle", &h2, &[z.clone(), z.clone(), o.clone()]));
    }
    let sp2s = symmetric_power(&sphere, 2, 5).map_err(|e| e.to_string())?;
    let h = set_chains(sp2s.set(), false, 5).unwrap().homology(4).unwrap();
    let want = vec![z.clone(), o.clone(), z.clone(), o.clone(), z.clone()];
    if h != want {
        return Err(mismatch("SP^2 of the sphere", &h, &want));
    }
    let mut maps = 0;
    for (name, x) in [("circle", &circle), ("sphere", &sphere)] {
        for d in 1..=3 {
            let max_degree = (d - 1).min(2);
            let top = max_degree + 1;
            let cells: u128 = symmetric_power_size(x, d + 1, top).iter().sum();
            if cells > DEFAULT_CELL_LIMIT {
                return Err(format!("SP^{} of the {name} needs {cells} simplices", d + 1));
            }
            let (from, to) = (symmetric_power(x, d, top).unwrap(), symmetric_power(x, d + 1, top).unwrap());
            let f = stabilization_map(x, &from, &to).map_err(|e| e.to_string())?;
            let chain_map = normalized_chain_map(&f, from.set(), to.set(), false, top).map_err(|e| e.to_string())?;
            let (cs, ct) = (set_chains(from.set(), false, top).unwrap(), set_chains(to.set(), false, top).unwrap());
            let r = is_quasi_iso(&chain_map, &cs, &ct, max_degree).map_err(|e| e.to_string())?;
            if !r.is_quasi_iso {
                return Err(format!("SP^{d} -> SP^{} of the {name}: {:?}", d + 1, r.witness));
            }
            maps += 1;
        }
    }
    Ok(format!("SP^2 groups match; {maps} stabilization maps are isomorphisms in range ({:.1?})", start.elapsed()))
}

/// Invariant factors from gcds of minors: `s_k = D_k / D_{k-1}`.
fn divisor_oracle(m: &IntMatrix) -> Vec<BigInt> {
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![Vec::new()];
        }
        (0..n)
            .flat_map(|last| {
                subsets(last, k - 1).into_iter().map(move |mut s| {
                    s.push(last);
                    s
                })
            })
            .collect()
    }
    let mut out = Vec::new();
    let mut previous = BigInt::from(1);
    for k in 1..=m.rows().min(m.cols()) {
        let mut g = BigInt::zero();
        for rows in subsets(m.rows(), k) {
            for cols in subsets(m.cols(), k) {
                let minor: Vec<BigInt> =
                    rows.iter().flat_map(|&r| cols.iter().map(move |&c| m.get(r, c).clone())).collect();
                g = g.gcd(&determinant(&IntMatrix::from_entries(k, k, minor)));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(&g / &previous);
        previous = g;
    }
    out
}

fn infrastructure() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..1000 {
        let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let entries = (0..r * c).map(|_| BigInt::from(rng.gen_range(-9i64..=9))).collect();
        let m = IntMatrix::from_entries(r, c, entries);
        let snf: Vec<BigInt> = smith_normal_form(&m).diagonal().iter().map(|x| x.abs()).collect();
        if snf != divisor_oracle(&m) {
            return Err(format!("matrix {trial}: {snf:?} vs {:?}", divisor_oracle(&m)));
        }
    }
    let mut complexes = 0;
    for name in SPACES {
        let k = space(name);
        for reduced in [false, true] {
            let c: ChainComplex = simplicial_chains(&k, reduced);
            c.check_square_zero().map_err(|e| e.to_string())?;
            let dim = k.dim();
            let h = c.integral_homology(dim).unwrap();
            let alternating: i64 = h.iter().enumerate().map(|(i, g)| if i % 2 == 0 { g.rank() as i64 } else { -(g.rank() as i64) }).sum();
            if alternating != c.euler_characteristic(dim) {
                return Err(format!("{name}: Euler-Poincare fails"));
            }
            for p in [2u64, 3, 5] {
                let direct = betti_mod_p(&c, p, dim).unwrap();
                let uct: Vec<usize> =
                    homology(&c, &AbGroup::cyclic(p), dim).unwrap().iter().map(|g| g.torsion().len()).collect();
                if direct != uct {
                    return Err(format!("{name} mod {p}: {direct:?} vs {uct:?}"));
                }
            }
            complexes += 1;
        }
    }
    Ok(format!("1000 random matrices match the minor oracle; {complexes} chain complexes pass the boundary, Euler and mod-p checks"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("Dold-Thom matrix", dold_thom_matrix),
        ("configuration lemma, exhaustive", configuration_lemma),
        ("normalization theorem", normalization),
        ("cover condition and homotopy colimit pipeline", svk_pipeline),
        ("chain-level vs space-level homotopy colimit", chain_vs_space),
        ("Kan extension, finality, restriction", corollary_checks),
        ("symmetric powers and stabilization", symmetric_powers),
        ("infrastructure properties", infrastructure),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} [{elapsed:.1?}] {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} [{elapsed:.1?}] {detail}", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
