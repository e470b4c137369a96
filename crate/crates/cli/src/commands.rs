use std::time::Instant;

use stp_core::complexes::{reduced_chains, simplicial_chains, to_simplicial_set};
use stp_core::doldkan::{normalized_chain_map, set_chains};
use stp_core::hocolim::{
    compare_chain_vs_space, disk_poset, dold_thom_verify, h0_diagram, restriction_invariance, simplicial_replacement,
    space_hocolim_chains, svk_check, CoverDump, DiskFamily, SvkReport,
};
use stp_core::homalg::{homology, induced_free_map, is_quasi_iso, AbGroup};
use stp_core::symprod::{stabilization_map, symmetric_power, symmetric_power_size};

use crate::report::{Check, GroupRow, Report, Status, Timing};
use crate::{Context, InputError};

const INCLUSION_NOTE: &str = "disk systems are subcomplexes ordered by inclusion, standing in for embeddings of disks";

struct Clock {
    enabled: bool,
    steps: Vec<Timing>,
    last: Instant,
}

impl Clock {
    fn new(enabled: bool) -> Self {
        Self { enabled, steps: Vec::new(), last: Instant::now() }
    }

    fn lap(&mut self, step: &str) {
        let now = Instant::now();
        self.steps.push(Timing { step: step.into(), seconds: (now - self.last).as_secs_f64() });
        self.last = now;
    }

    fn finish(self, report: &mut Report) {
        if self.enabled {
            report.timings = Some(self.steps);
        }
    }
}

fn witness(degree: usize, first: &AbGroup, second: &AbGroup) -> String {
    format!("degree {degree}: {first} vs {second}")
}

fn first_difference(a: &[AbGroup], b: &[AbGroup]) -> Option<String> {
    a.iter().zip(b).enumerate().find(|(_, (x, y))| x != y).map(|(i, (x, y))| witness(i, x, y))
}

fn truncation_note(max_degree: usize) -> String {
    format!("chain complexes are cut above degree {}, so groups are exact through degree {max_degree}", max_degree + 1)
}

fn family_name(f: DiskFamily) -> &'static str {
    match f {
        DiskFamily::Exhaustive => "all collapsible pieces",
        DiskFamily::ClosedSimplices => "closed simplices (enumeration budget exceeded)",
    }
}

fn svk_check_entry(svk: &SvkReport) -> Check {
    let detail = format!("{} certified, {} refuted, {} inconclusive simplices", svk.certified, svk.refuted, svk.inconclusive);
    if let Some(s) = svk.first_refuted() {
        let w = format!("simplex {}: {}", s.simplex, s.verdict.reason());
        return Check::new("cover condition", Status::Fail, detail).with_witness(Some(w));
    }
    if svk.inconclusive > 0 {
        let s = svk.simplices.iter().find(|s| !s.verdict.is_certified()).expect("an inconclusive simplex");
        let hint = svk.suggestion.clone().unwrap_or_default();
        let w = format!("simplex {}: {}; {hint}", s.simplex, s.verdict.reason());
        return Check::new("cover condition", Status::Inconclusive, detail).with_witness(Some(w));
    }
    Check::new("cover condition", Status::Pass, detail)
}

pub fn homology_cmd(ctx: &Context) -> Result<Report, InputError> {
    let k = &ctx.space;
    let max = ctx.max_degree.unwrap_or(k.dim());
    let mut clock = Clock::new(ctx.timings);
    let top = max + 1;
    let h = homology(&reduced_chains(k).padded(top).truncated(top), &ctx.coeff, max)?;
    let mut report = Report::new(ctx.command.clone(), ctx.info.clone(), Some(&ctx.coeff), max);
    report.groups.push(GroupRow::new("reduced homology", "H~", &h));
    clock.lap("homology");

    let full = simplicial_chains(k, false).padded(k.dim() + 1).integral_homology(k.dim())?;
    let alternating: i64 = full.iter().enumerate().map(|(i, g)| if i % 2 == 0 { g.rank() as i64 } else { -(g.rank() as i64) }).sum();
    let chi = k.euler_characteristic();
    let status = if alternating == chi { Status::Pass } else { Status::Fail };
    report.checks.push(Check::new("euler-poincare", status, format!("alternating Betti sum {alternating}, Euler characteristic {chi}")));
    report.notes.push(truncation_note(max));
    clock.lap("euler-poincare");
    clock.finish(&mut report);
    Ok(report)
}

pub fn verify(ctx: &Context) -> Result<Report, InputError> {
    let max = ctx.max_degree.unwrap_or(ctx.space.dim());
    let mut clock = Clock::new(ctx.timings);
    let r = dold_thom_verify(&ctx.space, &ctx.coeff, max)?;
    clock.lap("verify");
    let mut report = Report::new(ctx.command.clone(), ctx.info.clone(), Some(&ctx.coeff), max);
    report.fact("disk family", family_name(r.family));
    report.fact("disk systems (at most 2 components)", r.objects);
    report.groups.push(GroupRow::new("homotopy of the free module", "pi", &r.homotopy));
    report.groups.push(GroupRow::new("homotopy colimit of H~_0 over disks", "H", &r.hocolim));
    report.groups.push(GroupRow::new("reduced homology", "H~", &r.homology));
    for a in &r.agreements {
        let status = if a.agree { Status::Pass } else { Status::Fail };
        let name = format!("{} = {}", a.first, a.second);
        report.checks.push(
            Check::new(&name, status, format!("degrees 0..={max}"))
                .with_witness(a.witness.as_ref().map(|(i, x, y)| witness(*i, x, y))),
        );
    }
    let status = if r.normalized_quasi_iso { Status::Pass } else { Status::Fail };
    report.checks.push(Check::new("normalized chains = simplicial chains", status, "identity is a quasi-isomorphism"));
    report.checks.push(svk_check_entry(&r.svk));
    report.notes.push(INCLUSION_NOTE.into());
    report.notes.push(truncation_note(max));
    clock.finish(&mut report);
    Ok(report)
}

pub fn sympower(ctx: &Context, d: usize, stabilize: bool) -> Result<Report, InputError> {
    let max = ctx.max_degree.unwrap_or(d * ctx.space.dim());
    let bound = max + 1;
    let mut clock = Clock::new(ctx.timings);
    let x = to_simplicial_set(&ctx.space, bound);
    let powers = if stabilize { vec![d, d + 1] } else { vec![d] };
    for &e in &powers {
        if e == 0 {
            return Err(InputError("symmetric powers need d >= 1".into()));
        }
        let cells: u128 = symmetric_power_size(&x, e, bound).iter().sum();
        if cells > ctx.cell_limit {
            return Err(InputError(format!(
                "SP^{e} through dimension {bound} has {cells} simplices, over the cell limit {}",
                ctx.cell_limit
            )));
        }
    }
    let sp = symmetric_power(&x, d, bound)?;
    let chains = set_chains(sp.set(), false, bound)?;
    let h = chains.homology(max)?;
    clock.lap("symmetric power");
    let mut report = Report::new(ctx.command.clone(), ctx.info.clone(), None, max);
    let counts: Vec<String> = sp.set().nondegenerate_counts().iter().map(ToString::to_string).collect();
    report.fact(&format!("nondegenerate simplices of SP^{d}"), format!("({})", counts.join(", ")));
    report.groups.push(GroupRow::new(&format!("homology of SP^{d}"), "H", &h));
    if stabilize {
        let next = symmetric_power(&x, d + 1, bound)?;
        let f = stabilization_map(&x, &sp, &next)?;
        let map = normalized_chain_map(&f, sp.set(), next.set(), false, bound)?;
        let target = set_chains(next.set(), false, bound)?;
        report.groups.push(GroupRow::new(&format!("homology of SP^{}", d + 1), "H", &target.homology(max)?));
        for i in 0..=max {
            let m = induced_free_map(&map, &chains, &target, i)?;
            let rows = (0..m.rows()).map(|r| (0..m.cols()).map(|c| m.get(r, c).to_string()).collect()).collect();
            report.matrices.push((format!("stabilization on free part of H_{i}"), rows));
        }
        let range = (d - 1).min(max);
        let q = is_quasi_iso(&map, &chains, &target, range)?;
        let w = q.witness.as_ref().map(|w| witness(w.degree, &w.source, &w.target));
        let status = if q.is_quasi_iso { Status::Pass } else { Status::Fail };
        report.checks.push(
            Check::new("stabilization", status, format!("SP^{d} -> SP^{} is an isomorphism on H_i for i <= {range}", d + 1))
                .with_witness(w),
        );
        report.notes.push("stabilization is a classical cross-check alongside the configuration model, not part of its proof".into());
        clock.lap("stabilization");
    }
    report.notes.push(truncation_note(max));
    clock.finish(&mut report);
    Ok(report)
}

pub struct HocolimFlags {
    pub check_svk: bool,
    pub compare_space: bool,
    pub compare_leq_k: Option<usize>,
}

pub fn hocolim(ctx: &Context, k: usize, flags: &HocolimFlags) -> Result<Report, InputError> {
    let max = ctx.max_degree.unwrap_or(ctx.space.dim());
    let a = &ctx.coeff;
    let mut clock = Clock::new(ctx.timings);
    let poset = disk_poset(&ctx.space, k)?;
    let c = poset.category();
    clock.lap("disk poset");
    let mut report = Report::new(ctx.command.clone(), ctx.info.clone(), Some(a), max);
    report.fact("disk family", family_name(poset.family));
    report.fact(&format!("disk systems (at most {k} components)"), c.object_count());
    report.fact("inclusions", (0..c.morphisms().len()).filter(|&f| !c.is_identity(f)).count());

    let h0 = homology(&simplicial_replacement(&h0_diagram(&poset.diagram, a)?, max)?, a, max)?;
    let space = homology(&space_hocolim_chains(&poset.diagram, a, max)?, a, max)?;
    report.groups.push(GroupRow::new("homotopy colimit of H~_0", "H", &h0));
    report.groups.push(GroupRow::new("homotopy colimit of reduced chains", "H", &space));
    clock.lap("homotopy colimits");

    let svk = (flags.check_svk || ctx.strict).then(|| svk_check(&poset.diagram));
    if let Some(svk) = &svk {
        let mut check = svk_check_entry(svk);
        if !ctx.strict {
            check = check.informational();
        }
        report.checks.push(check);
        clock.lap("cover condition");
    }
    report.cover = Some(serde_json::to_value(CoverDump::new(&poset, svk.as_ref()))?);

    if flags.compare_space {
        let r = compare_chain_vs_space(&poset.diagram, a, max)?;
        report.groups.push(GroupRow::new("homotopy colimit of component sets", "H", &r.space_level));
        let status = if r.agree { Status::Pass } else { Status::Fail };
        let w = r.witness.map(|i| witness(i, &r.chain_level[i], &r.space_level[i]));
        report.checks.push(Check::new("chain level = space level", status, format!("degrees 0..={max}")).with_witness(w));
        let status = if r.actual_agrees { Status::Pass } else { Status::Fail };
        let w = first_difference(&r.chain_level, &r.space_actual);
        report.checks.push(
            Check::new("chain level = reduced chains of the systems", status, "holds when the cover condition does")
                .with_witness(w)
                .informational(),
        );
        clock.lap("chain vs space");
    }
    if let Some(j) = flags.compare_leq_k {
        let r = restriction_invariance(&ctx.space, a, &[j, k], max)?;
        let first = &r.levels[0];
        report.groups.push(GroupRow::new(&format!("homotopy colimit of H~_0, at most {j} components"), "H", &first.homology));
        let status = if r.agree { Status::Pass } else { Status::Fail };
        let detail = format!("{} systems with at most {j} components, {} with at most {k}", first.objects, r.levels[1].objects);
        let w = first_difference(&first.homology, &r.levels[1].homology);
        report.checks.push(Check::new("restriction invariance", status, detail).with_witness(w));
        clock.lap("restriction");
    }
    report.notes.push(INCLUSION_NOTE.into());
    report.notes.push(truncation_note(max));
    if svk.is_some() && !ctx.strict {
        report.notes.push("the cover condition decides the exit code only with --strict".into());
    }
    clock.finish(&mut report);
    Ok(report)
}
