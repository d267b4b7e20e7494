use std::collections::HashMap;
use std::fmt::Write;
use std::path::PathBuf;
use std::sync::Arc;

use blueprint_core::{
    enumerate_partial_models, model_graph, Blueprint, BoundedClosure, Domain, ModelGraph, PartialModel, WordProblem,
};
use blueprint_domino::{
    certify_nonempty, domino_run, verify_empty, verify_quotient, Schedule, SearchBounds, Verdict,
};
use blueprint_geom::{
    build_patch_blueprint, codings_to_text, enumerate_patches, parse_q, translate_domino_to_pretilings, BuildBudget,
    PartialTiling, PatchBlueprint, PatchBudget, PositionGroup,
};
use blueprint_qi::{
    check_map, compile_qi_patterns, encode_along_qi, CompileBudget, QiAlphabet, QiMap, QiView,
};
use blueprint_subshift::{for_each_window, hard_square, to_nearest_neighbor, PatternSet, Window};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{CliError, Result};
use crate::io::Run;
use crate::{Cli, Closure, Command, Format, PatchArgs};

pub fn run(cli: Cli) -> Result<i32> {
    let (mut run, code) = match cli.command {
        Command::Validate { blueprint, patterns, tiles } => validate(blueprint, patterns, tiles)?,
        Command::Models { blueprint, radius, max_models, closure, out } => models(&blueprint, radius, max_models, &closure, out)?,
        Command::Graph { blueprint, radius, model, format, closure, out } => graph(&blueprint, radius, model, format, &closure, out)?,
        Command::Admissible { blueprint, patterns, radius, grid, max_windows, closure, out } => {
            admissible(&blueprint, &patterns, radius, grid, max_windows, &closure, out)?
        }
        Command::NnConvert { blueprint, patterns, cap, closure, out } => nn_convert(&blueprint, &patterns, cap, &closure, out)?,
        Command::Domino { blueprint, patterns, schedule, vertices, max_nodes, verifier_cap, closure, out } => {
            domino(&blueprint, &patterns, &schedule, vertices, max_nodes, verifier_cap, &closure, out)?
        }
        Command::QiCompile { from, to, patterns, n, max_letters, max_patterns, closure, out } => {
            qi_compile(&from, &to, &patterns, n, CompileBudget { max_letters, max_patterns }, &closure, out)?
        }
        Command::QiRoundtrip { blueprint, depth, samples, letters, seed, closure, out } => {
            qi_roundtrip(&blueprint, depth, samples, letters, seed, &closure, out)?
        }
        Command::GeomBuild { patch, out } => geom_build(&patch, out)?,
        Command::GeomTranslate { patch, patterns, hard_square, out } => geom_translate(&patch, patterns, hard_square, out)?,
        Command::Render { tiles, r2, index, blueprint, radius, format, closure, out } => {
            render(tiles, &r2, index, blueprint, radius, format, &closure, out)?
        }
    };
    if let Some(path) = cli.manifest {
        run.param("exit", code);
        run.write_manifest(&path)?;
    }
    Ok(code)
}

fn closure(run: &mut Run, b: &Blueprint, c: &Closure, default_len: usize) -> Result<BoundedClosure> {
    let len = c.closure_len.unwrap_or(default_len);
    run.param("closure_len", len);
    run.param("closure_words", c.closure_words);
    Ok(BoundedClosure::new(b, len, c.closure_words)?)
}

fn validate(blueprint: Option<String>, patterns: Option<String>, tiles: Option<String>) -> Result<(Run, i32)> {
    let mut run = Run::new("validate");
    if blueprint.is_none() && tiles.is_none() {
        return Err(CliError::Usage("give --blueprint and/or --tiles".into()));
    }
    let mut fields = Vec::new();
    if let Some(arg) = blueprint {
        let b = run.blueprint(&arg)?;
        fields.extend([
            ("blueprint", b.name.replace(' ', "_")),
            ("states", b.num_states().to_string()),
            ("generators", b.num_gens().to_string()),
            ("relations", b.relations.len().to_string()),
            ("digest", b.digest()),
        ]);
        if let Some(p) = patterns {
            let fs = run.patterns(&p, &b)?;
            fields.extend([
                ("patterns", fs.patterns.len().to_string()),
                ("alphabet", fs.alphabet_size().to_string()),
                ("nearest_neighbor", fs.is_nearest_neighbor().to_string()),
                ("patterns_digest", fs.digest(&b)),
            ]);
        }
    } else if patterns.is_some() {
        return Err(CliError::Usage("--patterns needs --blueprint".into()));
    }
    if let Some(t) = tiles {
        let ts = run.tiles(&t)?;
        fields.extend([
            ("tiles", ts.tiles.len().to_string()),
            ("dimension", ts.dim.to_string()),
            ("rho2", ts.rho2.to_string()),
        ]);
    }
    run.summary(&fields);
    Ok((run, 0))
}

fn ball_models(b: &Blueprint, wp: &dyn WordProblem, radius: usize, max: usize) -> (Vec<PartialModel>, bool) {
    let s = enumerate_partial_models(b, Arc::new(Domain::ball(b.num_gens(), radius)), wp, max);
    (s.models, s.truncated)
}

fn models(blueprint: &str, radius: usize, max: usize, c: &Closure, out: Option<PathBuf>) -> Result<(Run, i32)> {
    let mut run = Run::new("models");
    let b = run.blueprint(blueprint)?;
    run.param("radius", radius);
    run.param("max_models", max);
    let wp = closure(&mut run, &b, c, 2 * radius + 2)?;
    let (ms, truncated) = ball_models(&b, &wp, radius, max);
    let mut text = String::new();
    for (k, m) in ms.iter().enumerate() {
        let _ = writeln!(text, "model {k}");
        for (w, s) in m.domain.words().iter().zip(&m.states) {
            if let Some(s) = s {
                let _ = writeln!(text, "  {} {}", b.show_word(w), b.states[*s]);
            }
        }
    }
    run.emit(out.as_ref(), &text)?;
    run.summary(&[("models", ms.len().to_string()), ("truncated", truncated.to_string())]);
    Ok((run, 0))
}

fn graph_text(b: &Blueprint, g: &ModelGraph) -> String {
    let mut out = String::new();
    for (i, w) in g.vertices.iter().enumerate() {
        let _ = writeln!(out, "v{i} {} {}", b.show_word(w), b.states[g.states[i]]);
    }
    for (u, v, s) in &g.edges {
        let _ = writeln!(out, "v{u} -{}-> v{v}", b.generators[*s].name);
    }
    out
}

fn model_graph_of(run: &mut Run, blueprint: &str, radius: usize, index: usize, c: &Closure) -> Result<(Blueprint, ModelGraph)> {
    let b = run.blueprint(blueprint)?;
    run.param("radius", radius);
    run.param("model", index);
    let wp = closure(run, &b, c, 2 * radius + 2)?;
    let (ms, _) = ball_models(&b, &wp, radius, index + 1);
    let m = ms.get(index).ok_or_else(|| CliError::Usage(format!("only {} partial models on radius {radius}", ms.len())))?;
    let g = model_graph(&b, m, &wp);
    Ok((b, g))
}

fn graph(blueprint: &str, radius: usize, index: usize, format: Format, c: &Closure, out: Option<PathBuf>) -> Result<(Run, i32)> {
    let mut run = Run::new("graph");
    let (b, g) = model_graph_of(&mut run, blueprint, radius, index, c)?;
    let text = match format {
        Format::Dot => g.to_dot(&b),
        Format::Text => graph_text(&b, &g),
        Format::Svg => return Err(CliError::Usage("graphs render as dot or text".into())),
    };
    run.emit(out.as_ref(), &text)?;
    run.summary(&[("vertices", g.vertices.len().to_string()), ("edges", g.edges.len().to_string())]);
    Ok((run, 0))
}

fn parse_grid(b: &Blueprint, spec: &str) -> Result<Domain> {
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    let bad = || CliError::Usage(format!("--grid expects x,y,width,height, got {spec}"));
    let [x, y, w, h] = parts.as_slice() else { return Err(bad()) };
    let (w, h) = (w.parse().map_err(|_| bad())?, h.parse().map_err(|_| bad())?);
    Ok(Domain::grid(b.gen_index(x)?, b.gen_index(y)?, w, h))
}

fn window_line(w: &Window, alphabet: &[String]) -> String {
    w.colors.iter().map(|c| c.map_or("-".to_string(), |a| alphabet[a].clone())).collect::<Vec<_>>().join(" ")
}

#[allow(clippy::too_many_arguments)]
fn admissible(
    blueprint: &str,
    patterns: &str,
    radius: Option<usize>,
    grid: Option<String>,
    max: usize,
    c: &Closure,
    out: Option<PathBuf>,
) -> Result<(Run, i32)> {
    let mut run = Run::new("admissible");
    let b = run.blueprint(blueprint)?;
    let fs = run.patterns(patterns, &b)?;
    let domain = match (radius, &grid) {
        (Some(r), None) => Domain::ball(b.num_gens(), r),
        (None, Some(g)) => parse_grid(&b, g)?,
        _ => return Err(CliError::Usage("give --radius or --grid".into())),
    };
    run.param("domain", radius.map_or_else(|| format!("grid {}", grid.unwrap()), |r| format!("ball {r}")));
    run.param("max_windows", max);
    let wp = closure(&mut run, &b, c, 2 * domain.radius() + 2)?;
    let domain = Arc::new(domain);
    let mut text = String::new();
    let _ = writeln!(text, "# {}", domain.words().iter().map(|w| b.show_word(w)).collect::<Vec<_>>().join(" | "));
    let mut count = 0usize;
    let done = for_each_window(&b, &wp, &fs, domain, &mut |w| {
        if count >= max {
            return false;
        }
        count += 1;
        if out.is_some() {
            text.push_str(&window_line(&w, &fs.alphabet));
            text.push('\n');
        }
        true
    })?;
    if out.is_some() {
        run.emit(out.as_ref(), &text)?;
    }
    run.summary(&[("windows", count.to_string()), ("truncated", (!done).to_string())]);
    Ok((run, 0))
}

fn nn_convert(blueprint: &str, patterns: &str, cap: usize, c: &Closure, out: Option<PathBuf>) -> Result<(Run, i32)> {
    let mut run = Run::new("nn-convert");
    let b = run.blueprint(blueprint)?;
    let fs = run.patterns(patterns, &b)?;
    run.param("cap", cap);
    let wp = closure(&mut run, &b, c, 2 * fs.max_support_len() + 3)?;
    let nn = to_nearest_neighbor(&b, &wp, &fs, cap)?;
    let mut text = String::new();
    let _ = writeln!(text, "# letters are windows on the ball of radius {}", nn.n);
    for (i, l) in nn.letters.iter().enumerate() {
        let _ = writeln!(text, "# b{i} = {}", window_line(l, &fs.alphabet));
    }
    text.push_str(&nn.patterns.to_toml_string(&b));
    run.emit(out.as_ref(), &text)?;
    run.summary(&[
        ("n", nn.n.to_string()),
        ("letters", nn.letters.len().to_string()),
        ("patterns", nn.patterns.patterns.len().to_string()),
    ]);
    Ok((run, 0))
}

#[allow(clippy::too_many_arguments)]
fn domino(
    blueprint: &str,
    patterns: &str,
    schedule: &str,
    vertices: Option<usize>,
    max_nodes: usize,
    verifier_cap: u128,
    c: &Closure,
    out: Option<PathBuf>,
) -> Result<(Run, i32)> {
    let mut run = Run::new("domino");
    let b = run.blueprint(blueprint)?;
    let fs = run.patterns(patterns, &b)?;
    let mut sched = Schedule::parse(schedule).ok_or_else(|| CliError::Usage(format!("bad schedule `{schedule}`")))?;
    sched.max_nodes = max_nodes;
    let max_radius = sched.steps.iter().map(|s| s.radius).max().unwrap_or(1);
    run.param("schedule", schedule);
    run.param("max_nodes", max_nodes);
    run.param("verifier_cap", verifier_cap);
    let wp = closure(&mut run, &b, c, 2 * max_radius + 2)?;
    let verdict = match vertices {
        Some(v) => {
            run.param("vertices", v);
            let bounds = SearchBounds { max_nodes, ..SearchBounds::exactly(v) };
            match certify_nonempty(&b, &fs, bounds, None)?.certificate {
                Some(cert) => Verdict::Nonempty(cert),
                None => Verdict::Unknown,
            }
        }
        None => domino_run(&b, &wp, &fs, &sched)?,
    };
    let fields = match &verdict {
        Verdict::Empty(cert) => {
            verify_empty(&b, &wp, &fs, cert, verifier_cap).map_err(|e| CliError::Verify(e.to_string()))?;
            run.emit(out.as_ref(), &cert.to_toml_string())?;
            vec![("verdict", "empty".to_string()), ("radius", cert.radius.to_string()), ("verified", "true".into())]
        }
        Verdict::Nonempty(cert) => {
            verify_quotient(&b, &fs, cert).map_err(|e| CliError::Verify(e.to_string()))?;
            run.emit(out.as_ref(), &cert.to_toml_string(&b, &fs))?;
            vec![("verdict", "nonempty".to_string()), ("vertices", cert.num_vertices().to_string()), ("verified", "true".into())]
        }
        Verdict::Unknown => vec![("verdict", "unknown".to_string())],
    };
    run.summary(&fields);
    Ok((run, verdict.exit_code()))
}

fn qi_compile(
    from: &str,
    to: &str,
    patterns: &str,
    n: usize,
    budget: CompileBudget,
    c: &Closure,
    out: Option<PathBuf>,
) -> Result<(Run, i32)> {
    let mut run = Run::new("qi-compile");
    let b1 = run.blueprint(from)?;
    let b2 = run.blueprint(to)?;
    let fs = run.patterns(patterns, &b2)?;
    run.param("n", n);
    run.param("max_letters", budget.max_letters);
    run.param("max_patterns", budget.max_patterns);
    let wp1 = closure(&mut run, &b1, c, 2 * n * (3 * n + 1) + 2)?;
    let (alph, compiled) = compile_qi_patterns(&b1, &wp1, &b2, &fs.alphabet, &fs, n, budget)?;
    let r = &compiled.reachability;
    let mut text = String::new();
    let _ = writeln!(text, "# QI(F, N) over {} from {}, N = {n}, {} letters", b1.name, b2.name, alph.count());
    let _ = writeln!(text, "# C1 {} C2 {} C4 {} C5 {} patterns", compiled.counts[0], compiled.counts[1], compiled.counts[3], compiled.counts[4]);
    let _ = writeln!(text, "# C3 reachability: targets up to length {}, connecting words up to length {}", r.max_target_len, r.max_word_len);
    text.push_str(&compiled.patterns.to_toml_string(&b1));
    run.emit(out.as_ref(), &text)?;
    run.summary(&[
        ("letters", alph.count().to_string()),
        ("patterns", compiled.patterns.patterns.len().to_string()),
        ("c1", compiled.counts[0].to_string()),
        ("c2", compiled.counts[1].to_string()),
        ("c4", compiled.counts[3].to_string()),
        ("c5", compiled.counts[4].to_string()),
        ("t_sizes", format!("[{}]", compiled.t_sizes.iter().map(usize::to_string).collect::<Vec<_>>().join(","))),
    ]);
    Ok((run, 0))
}

fn qi_roundtrip(
    blueprint: &str,
    depth: usize,
    samples: usize,
    letters: usize,
    seed: u64,
    c: &Closure,
    out: Option<PathBuf>,
) -> Result<(Run, i32)> {
    let mut run = Run::new("qi-roundtrip");
    let b = run.blueprint(blueprint)?;
    for (k, v) in [("depth", depth), ("samples", samples), ("letters", letters)] {
        run.param(k, v);
    }
    run.param("seed", seed);
    let wp = closure(&mut run, &b, c, 2 * depth + 4)?;
    let alph = QiAlphabet::new(&b, &b, letters, 1);
    let qi = QiMap::identity(&b, Domain::ball(b.num_gens(), depth + 1).words());
    check_map(&qi, &b, &wp, &b, &wp)?;
    let (ms, _) = ball_models(&b, &wp, depth, 1);
    let model = Arc::new(ms.into_iter().next().ok_or_else(|| CliError::Check("no partial model".into()))?);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = String::new();
    let mut passed = 0;
    for k in 0..samples {
        let mut by_class: HashMap<_, usize> = HashMap::new();
        let mut colors = Vec::with_capacity(model.domain.len());
        for (w, s) in model.domain.words().iter().zip(&model.states) {
            if s.is_none() {
                colors.push(None);
                continue;
            }
            let key = wp.key(w).ok_or_else(|| CliError::Check(format!("closure too short for {}", b.show_word(w))))?;
            colors.push(Some(*by_class.entry(key).or_insert_with(|| rng.gen_range(0..letters))));
        }
        let y = Window { model: Arc::clone(&model), colors };
        let x = encode_along_qi(&alph, &qi, &b, &wp, &b, &wp, &y, Arc::clone(&model))?;
        let view = QiView::new(&b, &b, &wp, &alph, &x);
        let (_, xi) = view.theta()?;
        let ok = view.gamma(xi, depth)?.cells() == y.cells();
        passed += ok as usize;
        let _ = writeln!(report, "sample {k} {}", if ok { "ok" } else { "MISMATCH" });
    }
    if out.is_some() {
        run.emit(out.as_ref(), &report)?;
    }
    run.summary(&[("samples", samples.to_string()), ("passed", passed.to_string())]);
    if passed != samples {
        return Err(CliError::Check(format!("{} of {samples} round trips failed", samples - passed)));
    }
    Ok((run, 0))
}

fn patch_blueprint(run: &mut Run, p: &PatchArgs) -> Result<(blueprint_geom::PuncturedTileSet, PatchBlueprint)> {
    let ts = run.tiles(&p.tiles)?;
    for (k, v) in [
        ("K", p.k),
        ("L", p.l),
        ("relation_cap", p.relation_cap),
        ("max_relations", p.max_relations),
        ("max_nodes", p.max_nodes),
        ("max_patches", p.max_patches),
    ] {
        run.param(k, v);
    }
    let budget = BuildBudget {
        patches: PatchBudget { max_nodes: p.max_nodes, max_patches: p.max_patches },
        relation_cap: p.relation_cap,
        max_relations: p.max_relations,
    };
    let pb = build_patch_blueprint(&ts, p.k, p.l, budget)?;
    Ok((ts, pb))
}

fn geom_build(p: &PatchArgs, out: Option<PathBuf>) -> Result<(Run, i32)> {
    let mut run = Run::new("geom-build");
    let (_, pb) = patch_blueprint(&mut run, p)?;
    let b = &pb.blueprint;
    run.emit(out.as_ref(), &b.to_toml_string())?;
    run.summary(&[
        ("K", pb.k.to_string()),
        ("L", pb.l.to_string()),
        ("states", b.num_states().to_string()),
        ("generators", b.num_gens().to_string()),
        ("relations", b.relations.len().to_string()),
        ("homeomorphism_guaranteed", pb.homeomorphism_guaranteed.to_string()),
    ]);
    Ok((run, 0))
}

fn geom_translate(p: &PatchArgs, patterns: Option<String>, hard: bool, out: Option<PathBuf>) -> Result<(Run, i32)> {
    let mut run = Run::new("geom-translate");
    let (ts, pb) = patch_blueprint(&mut run, p)?;
    let fs: PatternSet = match (patterns, hard) {
        (Some(f), false) => run.patterns(&f, &pb.blueprint)?,
        (None, true) => {
            run.param("patterns", "hard-square");
            hard_square(&pb.blueprint)
        }
        _ => return Err(CliError::Usage("give --patterns or --hard-square".into())),
    };
    let group = PositionGroup::of(&pb);
    let fams = translate_domino_to_pretilings(&pb, &ts, &group, &fs)?;
    run.emit(out.as_ref(), &codings_to_text(&group, &ts, &fs.alphabet, &fams))?;
    let total: u128 = fams.iter().map(|f| f.count()).sum();
    run.summary(&[
        ("basis", group.basis.len().to_string()),
        ("families", fams.len().to_string()),
        ("codings", total.to_string()),
    ]);
    Ok((run, 0))
}

#[allow(clippy::too_many_arguments)]
fn render(
    tiles: Option<String>,
    r2: &str,
    index: usize,
    blueprint: Option<String>,
    radius: usize,
    format: Format,
    c: &Closure,
    out: Option<PathBuf>,
) -> Result<(Run, i32)> {
    let mut run = Run::new("render");
    let (text, fields) = match (tiles, blueprint) {
        (Some(t), None) => {
            let ts = run.tiles(&t)?;
            let r2q = parse_q(r2)?;
            run.param("r2", r2);
            run.param("index", index);
            let patches = enumerate_patches(&ts, r2q, PatchBudget::default())?;
            let p = patches.get(index).ok_or_else(|| CliError::Usage(format!("only {} patches", patches.len())))?;
            let t = PartialTiling::uncolored(&ts, p)?;
            let text = match format {
                Format::Svg => t.to_svg(&ts, &[]),
                Format::Text => t.to_text(&ts),
                Format::Dot => return Err(CliError::Usage("tilings render as svg or text".into())),
            };
            (text, vec![("patches", patches.len().to_string()), ("tiles", t.len().to_string())])
        }
        (None, Some(bp)) => {
            let (b, g) = model_graph_of(&mut run, &bp, radius, 0, c)?;
            let text = match format {
                Format::Dot => g.to_dot(&b),
                Format::Text => graph_text(&b, &g),
                Format::Svg => return Err(CliError::Usage("graphs render as dot or text".into())),
            };
            (text, vec![("vertices", g.vertices.len().to_string())])
        }
        _ => return Err(CliError::Usage("give --tiles or --blueprint".into())),
    };
    run.param("format", format!("{format:?}").to_lowercase());
    run.emit(out.as_ref(), &text)?;
    run.summary(&fields);
    Ok((run, 0))
}
