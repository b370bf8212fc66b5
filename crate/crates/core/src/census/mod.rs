//! Exhaustive censuses of coefficient boxes.
//!
//! The box at the largest height is enumerated once. Ranks are split into
//! shards (`rank mod shards`) and each shard into chunks of [`CHUNK_SIZE`]
//! consecutive shard positions. Chunks are classified in parallel, tallied per
//! height bin and merged by addition, so the report does not depend on the
//! shard count, thread count or scheduling.

mod checkpoint;
mod fit;
mod tally;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use checkpoint::{spec_hash, CheckpointStore};
pub use fit::{fit_asymptotic, FitRecord};
pub use tally::{Tally, VerdictCounts};

use crate::breciprocal::{BRecipPoly, FamilyKind, FamilySpec, Member};
use crate::galois::{classify, classify_plain, classify_small, ClassifyOptions, GaloisClassification, G3Membership};
use crate::intpoly::IntPoly;
use crate::Error;

/// Consecutive shard positions per checkpointed unit of work.
pub const CHUNK_SIZE: u64 = 1 << 16;

/// Default cap on the number of ranks in a census box.
pub const DEFAULT_MAX_INSTANCES: u64 = 2_000_000_000;

#[derive(Debug, Clone)]
pub struct CensusConfig {
    pub kind: FamilyKind,
    pub n: usize,
    pub b: i64,
    /// Strictly increasing; the last one is the box height.
    pub heights: Vec<u64>,
    pub shards: u64,
    /// Worker threads; 0 means the rayon default.
    pub threads: usize,
    pub seed: u64,
    pub classify: ClassifyOptions,
    pub max_instances: u64,
    pub checkpoint_dir: Option<PathBuf>,
    /// Stop with [`Error::Interrupted`] after this many newly finished chunks.
    pub stop_after_chunks: Option<u64>,
    /// Per-polynomial CSV; incompatible with resuming from checkpoints.
    pub detail_csv: Option<PathBuf>,
}

impl CensusConfig {
    pub fn new(kind: FamilyKind, n: usize, b: i64, heights: Vec<u64>) -> Self {
        CensusConfig {
            kind,
            n,
            b,
            heights,
            shards: 1,
            threads: 0,
            seed: crate::intpoly::DEFAULT_SEED,
            classify: ClassifyOptions::default(),
            max_instances: DEFAULT_MAX_INSTANCES,
            checkpoint_dir: None,
            stop_after_chunks: None,
            detail_csv: None,
        }
    }

    pub fn spec(&self) -> Result<FamilySpec, Error> {
        let h = *self
            .heights
            .last()
            .ok_or_else(|| Error::InvalidInput("no heights given".into()))?;
        FamilySpec::new(self.kind, self.n, self.b, h)
    }
}

/// Non-maximal counts at one height.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonMaxCount {
    /// Separable members whose group is not the full one, undetermined excluded.
    #[serde(rename = "E")]
    pub e: u64,
    /// Members with a reducible `f` (inseparable ones included).
    #[serde(rename = "R")]
    pub r: u64,
    pub undetermined: u64,
    pub degenerate: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeightReport {
    #[serde(rename = "H")]
    pub h: u64,
    pub family_size: u64,
    /// Cumulative over all members of height `<= H`.
    pub tally: Tally,
    pub nonmax: NonMaxCount,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusReport {
    pub spec: FamilySpec,
    pub heights: Vec<u64>,
    pub seed: u64,
    pub classify: ClassifyOptions,
    pub per_height: Vec<HeightReport>,
    pub fits: Vec<FitRecord>,
    /// Fits that could not be made, with the reason.
    pub fit_notes: Vec<String>,
}

impl CensusReport {
    pub fn at(&self, h: u64) -> Option<&HeightReport> {
        self.per_height.iter().find(|r| r.h == h)
    }

    pub fn fit(&self, model: &str) -> Option<&FitRecord> {
        self.fits.iter().find(|f| f.model == model)
    }

    /// Deterministic pretty JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// `E(H)` and `R(H)` from a completed census.
pub fn count_nonmax(report: &CensusReport, h: u64) -> Option<NonMaxCount> {
    report.at(h).map(|r| r.nonmax)
}

fn nonmax_of(kind: FamilyKind, t: &Tally) -> NonMaxCount {
    let v = &t.verdicts;
    let e = match kind {
        FamilyKind::FixedConstantTerm => v.small_base_group + v.reducible_base,
        _ => v.g1 + v.g2 + v.g3 + v.small_base_group + v.reducible_base,
    };
    NonMaxCount {
        e,
        r: t.f_reducible,
        undetermined: v.undetermined,
        degenerate: v.degenerate,
    }
}

/// Exponent of `H` in the expected growth of the non-maximal count.
fn growth_model(kind: FamilyKind, n: usize) -> (f64, bool) {
    match kind {
        FamilyKind::BReciprocal => (n as f64, true),
        FamilyKind::BReciprocalMonic => (n as f64 - 1.0, true),
        FamilyKind::FixedConstantTerm => (n as f64 - 2.0, false),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct WorkItem {
    shard: u64,
    chunk: u64,
}

struct ChunkOutcome {
    item: WorkItem,
    bins: Vec<Tally>,
    detail: String,
}

fn bin_of(heights: &[u64], box_height: u64) -> usize {
    heights
        .iter()
        .position(|&h| box_height <= h)
        .expect("member inside the box")
}

fn classify_member(
    spec: &FamilySpec,
    digits: &[i64],
    opts: &ClassifyOptions,
) -> Result<GaloisClassification, IntPoly> {
    match spec.kind {
        FamilyKind::FixedConstantTerm => match spec.member_from_digits(digits) {
            Member::Plain(f) => Err(f),
            Member::BRecip(_) => unreachable!(),
        },
        kind => {
            let mut coeffs = digits.to_vec();
            if kind == FamilyKind::BReciprocalMonic {
                coeffs.push(1);
            }
            if let Some(c) = classify_small(spec.b, &coeffs, opts.full_f_factorization) {
                return Ok(c);
            }
            let w = BRecipPoly::new(spec.n, spec.b, IntPoly::from_i64s(&coeffs)).expect("valid member");
            Ok(classify(&w, opts))
        }
    }
}

fn detail_row(spec: &FamilySpec, rank: u64, digits: &[i64], c: &GaloisClassification) -> String {
    let Member::BRecip(w) = spec.member_from_digits(digits) else {
        unreachable!()
    };
    let coeffs: Vec<String> = w.g().coeffs().iter().map(|c| c.to_string()).collect();
    let g3 = match c.in_g3 {
        G3Membership::Yes => "true",
        G3Membership::No => "false",
        G3Membership::NotApplicable => "NotApplicable",
        G3Membership::Undetermined => "Undetermined",
    };
    format!(
        "{rank},{},{:?},{},{},{g3},{},{},{}\n",
        coeffs.join(" "),
        c.verdict,
        c.in_g1,
        c.in_g2,
        c.f_reducible,
        w.g().height(),
        w.f().height()
    )
}

fn plain_detail_row(rank: u64, f: &IntPoly, c: &crate::galois::PlainClassification) -> String {
    let coeffs: Vec<String> = f.coeffs().iter().map(|c| c.to_string()).collect();
    let verdict = match c.base_group {
        _ if !c.separable => "Degenerate",
        _ if c.reducible => "ReducibleBase",
        Some(crate::galois::BaseGroup::CertifiedSn) => "G0",
        Some(crate::galois::BaseGroup::NotSn) => "SmallBaseGroup",
        _ => "Undetermined",
    };
    format!(
        "{rank},{},{verdict},,,,{},,{}\n",
        coeffs.join(" "),
        c.reducible,
        f.height()
    )
}

fn run_chunk(
    spec: &FamilySpec,
    heights: &[u64],
    shards: u64,
    ranks: u64,
    item: WorkItem,
    opts: &ClassifyOptions,
    want_detail: bool,
) -> ChunkOutcome {
    let mut bins = vec![Tally::default(); heights.len()];
    let mut detail = String::new();
    let first = item.chunk * CHUNK_SIZE;
    for pos in first..first + CHUNK_SIZE {
        let Some(rank) = pos.checked_mul(shards).and_then(|r| r.checked_add(item.shard)) else {
            break;
        };
        if rank >= ranks {
            break;
        }
        let Some(digits) = spec.decode(rank) else {
            continue;
        };
        let box_height = digits.iter().map(|d| d.unsigned_abs()).max().unwrap_or(0);
        let bin = &mut bins[bin_of(heights, box_height)];
        match classify_member(spec, &digits, opts) {
            Ok(c) => {
                bin.record(&c);
                if want_detail {
                    detail.push_str(&detail_row(spec, rank, &digits, &c));
                }
            }
            Err(f) => {
                let c = classify_plain(&f, opts);
                bin.record_plain(&c);
                if want_detail {
                    detail.push_str(&plain_detail_row(rank, &f, &c));
                }
            }
        }
    }
    ChunkOutcome { item, bins, detail }
}

/// Chunks per shard for a box of `ranks` ranks.
fn chunks_in_shard(ranks: u64, shards: u64, shard: u64) -> u64 {
    let positions = if shard < ranks {
        (ranks - shard).div_ceil(shards)
    } else {
        0
    };
    positions.div_ceil(CHUNK_SIZE)
}

/// Runs (or resumes) a census and builds its report.
pub fn run_census(cfg: &CensusConfig) -> Result<CensusReport, Error> {
    let spec = cfg.spec()?;
    if cfg.heights.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput("heights must be strictly increasing".into()));
    }
    if cfg.heights[0] == 0 {
        return Err(Error::InvalidInput("heights must be positive".into()));
    }
    if cfg.shards == 0 {
        return Err(Error::InvalidInput("need at least one shard".into()));
    }
    if cfg.detail_csv.is_some() && cfg.checkpoint_dir.is_some() {
        return Err(Error::InvalidInput(
            "per-polynomial detail cannot be combined with checkpoints".into(),
        ));
    }
    let ranks = match spec.rank_count() {
        Some(r) if r <= cfg.max_instances => r,
        _ => {
            return Err(Error::BudgetExceeded(format!(
                "box of height {} has more than {} ranks",
                spec.h, cfg.max_instances
            )))
        }
    };

    let store = match &cfg.checkpoint_dir {
        Some(dir) => Some(CheckpointStore::open(dir, &spec_hash(&spec, &cfg.heights, &cfg.classify, cfg.seed), cfg.shards)?),
        None => None,
    };
    let mut done = match &store {
        Some(s) => s.load(cfg.heights.len())?,
        None => Default::default(),
    };

    let items: Vec<WorkItem> = (0..cfg.shards)
        .flat_map(|shard| (0..chunks_in_shard(ranks, cfg.shards, shard)).map(move |chunk| WorkItem { shard, chunk }))
        .filter(|it| !done.contains_key(&(it.shard, it.chunk)))
        .collect();

    let finished = AtomicU64::new(0);
    let limit = cfg.stop_after_chunks.unwrap_or(u64::MAX);
    let want_detail = cfg.detail_csv.is_some();
    let work = || -> Result<Vec<ChunkOutcome>, Error> {
        items
            .par_iter()
            .filter_map(|&item| {
                if finished.load(Ordering::SeqCst) >= limit {
                    return None;
                }
                let out = run_chunk(&spec, &cfg.heights, cfg.shards, ranks, item, &cfg.classify, want_detail);
                if let Some(s) = &store {
                    if let Err(e) = s.append(item.shard, item.chunk, &out.bins) {
                        return Some(Err(e));
                    }
                }
                finished.fetch_add(1, Ordering::SeqCst);
                Some(Ok(out))
            })
            .collect()
    };
    let outcomes = if cfg.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.threads)
            .build()
            .map_err(|e| Error::InvalidInput(e.to_string()))?
            .install(work)?
    } else {
        work()?
    };

    let completed = outcomes.len() as u64;
    if completed < items.len() as u64 {
        return Err(Error::Interrupted(completed));
    }

    if let Some(path) = &cfg.detail_csv {
        let mut sorted: Vec<&ChunkOutcome> = outcomes.iter().collect();
        sorted.sort_by_key(|o| o.item);
        let mut out = BufWriter::new(File::create(path)?);
        writeln!(out, "rank,coefficients,verdict,in_G1,in_G2,in_G3,f_reducible,Ht_g,Ht_f")?;
        for o in sorted {
            out.write_all(o.detail.as_bytes())?;
        }
        out.flush()?;
    }

    for o in outcomes {
        done.insert((o.item.shard, o.item.chunk), o.bins);
    }
    let mut bins = vec![Tally::default(); cfg.heights.len()];
    for chunk_bins in done.values() {
        for (acc, t) in bins.iter_mut().zip(chunk_bins) {
            *acc += t;
        }
    }
    Ok(build_report(cfg, spec, bins))
}

fn build_report(cfg: &CensusConfig, spec: FamilySpec, bins: Vec<Tally>) -> CensusReport {
    let mut per_height = Vec::with_capacity(bins.len());
    let mut running = Tally::default();
    for (&h, bin) in cfg.heights.iter().zip(&bins) {
        running += bin;
        per_height.push(HeightReport {
            h,
            family_size: spec.with_height(h).family_size().expect("fits in u64"),
            tally: running.clone(),
            nonmax: nonmax_of(spec.kind, &running),
        });
    }

    let mut fits = Vec::new();
    let mut fit_notes = Vec::new();
    if per_height.len() >= 3 {
        let (a, with_log) = growth_model(spec.kind, spec.n);
        let mut series: Vec<(&str, Vec<u64>, f64, bool)> =
            vec![("E", per_height.iter().map(|r| r.nonmax.e).collect(), a, with_log)];
        match spec.kind {
            FamilyKind::FixedConstantTerm => {
                series.push(("R", per_height.iter().map(|r| r.nonmax.r).collect(), a, false));
            }
            _ => {
                series.push(("in_G1", per_height.iter().map(|r| r.tally.in_g1).collect(), a, true));
                series.push(("in_G2", per_height.iter().map(|r| r.tally.in_g2).collect(), a, false));
            }
        }
        for (model, counts, a, with_log) in series {
            match fit_asymptotic(model, &cfg.heights, &counts, a, with_log) {
                Ok(f) => fits.push(f),
                Err(e) => fit_notes.push(format!("{model}: {e}")),
            }
        }
    }

    CensusReport {
        spec,
        heights: cfg.heights.clone(),
        seed: cfg.seed,
        classify: cfg.classify.clone(),
        per_height,
        fits,
        fit_notes,
    }
}
