use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use unires::metrics::{CentralityMetric, CentralityOptions, DegreeFit};
use unires::resolution::{KronSamplingOptions, Method, ResolutionResult};
use unires::spectral::ResistanceCalculator;
use unires::{
    centrality_suite, degree_fit, metrics_report, top_k, write_edge_list, write_hierarchy, Graph,
    Hierarchy, MetricsReport, UndirectedGraph, VertexId,
};

use crate::args::{CentralityArgs, ConvertArgs, DegreeFitArgs, MetricsArgs, ResistanceArgs, SpyplotArgs};
use crate::files::{
    load_with_optional_hierarchy, parse_dataset, parse_graph, read_input, CliError, CliResult, InputFile,
    OutputDir,
};

#[derive(Serialize)]
struct InputRecord {
    path: String,
    sha256: String,
}

impl From<&InputFile> for InputRecord {
    fn from(f: &InputFile) -> Self {
        InputRecord {
            path: f.path.display().to_string(),
            sha256: f.sha256.clone(),
        }
    }
}

/// Everything needed to repeat a run. Holds no timestamps so that repeated
/// runs stay byte-identical.
#[derive(Serialize)]
struct Manifest {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    inputs: BTreeMap<&'static str, InputRecord>,
    flags: BTreeMap<&'static str, String>,
    outputs: Vec<String>,
    summary: BTreeMap<&'static str, usize>,
}

impl Manifest {
    fn new(command: &'static str) -> Self {
        Manifest {
            tool: "unires",
            version: env!("CARGO_PKG_VERSION"),
            command,
            inputs: BTreeMap::new(),
            flags: BTreeMap::new(),
            outputs: Vec::new(),
            summary: BTreeMap::new(),
        }
    }

    fn write(mut self, out: &mut OutputDir, name: &str) -> CliResult<()> {
        self.outputs = out.written().to_vec();
        let mut json = serde_json::to_string_pretty(&self).expect("manifest serializes");
        json.push('\n');
        out.write(name, json.as_bytes())
    }
}

pub fn convert(args: &ConvertArgs) -> CliResult<()> {
    let graph_file = read_input(&args.graph)?;
    let hierarchy_file = read_input(&args.hierarchy)?;
    let (g, h) = parse_dataset(&graph_file, &hierarchy_file)?;
    let method = Method::from(args.method);
    let opts = KronSamplingOptions {
        sort: args.sort_direction.into(),
        guard: args.guard_mode.into(),
    };
    let result = method.run(&g, &h, &opts)?;

    let mut out = OutputDir::create(&args.out, &[&graph_file, &hierarchy_file])?;
    out.write("network.tsv", write_edge_list(&result.network).as_bytes())?;
    out.write("hierarchy.tsv", write_hierarchy(&result.hierarchy).as_bytes())?;
    out.write("provenance.tsv", result.write_provenance().as_bytes())?;

    let mut manifest = Manifest::new("convert");
    manifest.inputs.insert("graph", (&graph_file).into());
    manifest.inputs.insert("hierarchy", (&hierarchy_file).into());
    manifest.flags.insert("method", method.as_str().into());
    manifest.flags.insert("sort_direction", format!("{:?}", args.sort_direction).to_lowercase());
    manifest.flags.insert("guard_mode", format!("{:?}", args.guard_mode).to_lowercase());
    manifest.summary = conversion_summary(&g, &result);
    manifest.write(&mut out, "manifest.json")?;

    println!(
        "{}: {} edges on {} vertices -> {} edges on {} vertices",
        method.as_str(),
        g.edge_count(),
        g.vertex_count(),
        result.network.edge_count(),
        result.network.vertex_count()
    );
    Ok(())
}

fn conversion_summary(g: &Graph, r: &ResolutionResult) -> BTreeMap<&'static str, usize> {
    BTreeMap::from([
        ("input_vertices", g.vertex_count()),
        ("input_edges", g.edge_count()),
        ("output_vertices", r.network.vertex_count()),
        ("output_edges", r.network.edge_count()),
        ("dropped_input_edges", r.provenance.dropped.len()),
    ])
}

pub fn metrics(args: &MetricsArgs) -> CliResult<()> {
    let graph_file = read_input(&args.graph)?;
    let hierarchy_file = args.hierarchy.as_deref().map(read_input).transpose()?;
    let g = load_with_optional_hierarchy(&graph_file, hierarchy_file.as_ref())?;
    let report = metrics_report(&g)?;

    let mut inputs = vec![&graph_file];
    inputs.extend(hierarchy_file.as_ref());
    let mut out = OutputDir::create(&args.out, &inputs)?;
    let mut json = serde_json::to_string_pretty(&report).expect("report serializes");
    json.push('\n');
    out.write("metrics.json", json.as_bytes())?;
    out.write("metrics.txt", metrics_table(&report).as_bytes())?;

    let mut manifest = Manifest::new("metrics");
    manifest.inputs.insert("graph", (&graph_file).into());
    if let Some(h) = &hierarchy_file {
        manifest.inputs.insert("hierarchy", h.into());
    }
    manifest.write(&mut out, "metrics-manifest.json")?;
    print!("{}", metrics_table(&report));
    Ok(())
}

fn metrics_table(r: &MetricsReport) -> String {
    let rows: [(&str, String); 9] = [
        ("vertices", r.vertex_count.to_string()),
        ("active vertices", r.active_vertex_count.to_string()),
        ("edges", r.edge_count.to_string()),
        ("density (active vertices)", r.density.to_string()),
        ("density (all vertices)", r.density_all_vertices.to_string()),
        ("reciprocity", r.reciprocity.to_string()),
        ("diameter", r.diameter.to_string()),
        ("characteristic path length", r.characteristic_path_length.to_string()),
        ("mean clustering (directed)", r.mean_clustering_directed.to_string()),
    ];
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut text = String::new();
    for (k, v) in rows {
        writeln!(text, "{k:<width$}  {v}").unwrap();
    }
    text
}

pub fn centrality(args: &CentralityArgs) -> CliResult<()> {
    let graph_file = read_input(&args.graph)?;
    let hierarchy_file = args.hierarchy.as_deref().map(read_input).transpose()?;
    let g = load_with_optional_hierarchy(&graph_file, hierarchy_file.as_ref())?;
    let table = centrality_suite(&g, &CentralityOptions { damping: args.damping })?;
    let ranked = top_k(&table, args.top_k as usize)?;

    let mut full = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["vertex"];
    header.extend(CentralityMetric::ALL.iter().map(|m| m.as_str()));
    full.write_record(&header).map_err(csv_error)?;
    let mut ids: Vec<VertexId> = g.vertices().ids().collect();
    ids.sort_by(|&a, &b| g.name(a).cmp(g.name(b)));
    for v in ids {
        let mut row = vec![g.name(v).to_owned()];
        row.extend(CentralityMetric::ALL.iter().map(|&m| table.score(m, v).to_string()));
        full.write_record(&row).map_err(csv_error)?;
    }

    let mut top = csv::Writer::from_writer(Vec::new());
    top.write_record(["metric", "rank", "vertex", "score"]).map_err(csv_error)?;
    for list in &ranked {
        for e in &list.entries {
            top.write_record([
                list.metric.as_str(),
                &e.rank.to_string(),
                &e.name,
                &e.score.to_string(),
            ])
            .map_err(csv_error)?;
        }
    }

    let mut inputs = vec![&graph_file];
    inputs.extend(hierarchy_file.as_ref());
    let mut out = OutputDir::create(&args.out, &inputs)?;
    out.write("centrality.csv", &full.into_inner().expect("in-memory writer"))?;
    out.write("top_k.csv", &top.into_inner().expect("in-memory writer"))?;

    let mut manifest = Manifest::new("centrality");
    manifest.inputs.insert("graph", (&graph_file).into());
    if let Some(h) = &hierarchy_file {
        manifest.inputs.insert("hierarchy", h.into());
    }
    manifest.flags.insert("top_k", args.top_k.to_string());
    manifest.flags.insert("damping", args.damping.to_string());
    manifest.summary.insert("hits_iterations", table.hits_iterations());
    manifest.summary.insert("pagerank_iterations", table.pagerank_iterations());
    manifest.write(&mut out, "centrality-manifest.json")?;

    for list in &ranked {
        let names: Vec<&str> = list.entries.iter().map(|e| e.name.as_str()).collect();
        println!("{:<14}{}", list.metric.as_str(), names.join(" "));
    }
    Ok(())
}

fn csv_error(e: csv::Error) -> CliError {
    CliError::Write {
        path: "csv buffer".into(),
        source: e.into(),
    }
}

/// Internal vertices in depth-first order, then leaves in depth-first order.
pub fn spy_ordering(h: &Hierarchy) -> Vec<VertexId> {
    let (mut order, leaves): (Vec<VertexId>, Vec<VertexId>) =
        h.preorder().iter().partition(|&&v| !h.is_leaf(v));
    order.extend(leaves);
    order
}

pub fn spyplot(args: &SpyplotArgs) -> CliResult<()> {
    let graph_file = read_input(&args.graph)?;
    let hierarchy_file = read_input(&args.hierarchy)?;
    let (g, h) = parse_dataset(&graph_file, &hierarchy_file)?;
    let order = spy_ordering(&h);
    let mut position = vec![0usize; g.vertex_count()];
    let mut ordering = String::new();
    for (i, &v) in order.iter().enumerate() {
        position[v.index()] = i;
        writeln!(ordering, "{}", h.name(v)).unwrap();
    }
    let mut cells: Vec<(usize, usize)> = g
        .edges()
        .map(|(u, v, _)| (position[u.index()], position[v.index()]))
        .collect();
    cells.sort_unstable();
    let mut spy = String::new();
    for (r, c) in &cells {
        writeln!(spy, "{r}\t{c}").unwrap();
    }

    let mut out = OutputDir::create(&args.out, &[&graph_file, &hierarchy_file])?;
    out.write("ordering.txt", ordering.as_bytes())?;
    out.write("spy.tsv", spy.as_bytes())?;

    let internal = h.internal_vertices().count();
    let in_leaf_block = cells.iter().filter(|&&(r, c)| r >= internal && c >= internal).count();
    let mut manifest = Manifest::new("spyplot");
    manifest.inputs.insert("graph", (&graph_file).into());
    manifest.inputs.insert("hierarchy", (&hierarchy_file).into());
    manifest.summary.insert("internal_vertices", internal);
    manifest.summary.insert("edges", cells.len());
    manifest.summary.insert("edges_in_leaf_block", in_leaf_block);
    manifest.write(&mut out, "spyplot-manifest.json")?;

    println!(
        "{} of {} edges in the leaf block ({} internal vertices ordered first)",
        in_leaf_block,
        cells.len(),
        internal
    );
    Ok(())
}

#[derive(Serialize)]
struct FitSummary {
    lambda: f64,
    d_min: usize,
    mean: f64,
    vertex_count: usize,
}

pub fn degree_fit_cmd(args: &DegreeFitArgs) -> CliResult<()> {
    let graph_file = read_input(&args.graph)?;
    let hierarchy_file = args.hierarchy.as_deref().map(read_input).transpose()?;
    let g = load_with_optional_hierarchy(&graph_file, hierarchy_file.as_ref())?;
    let fit: DegreeFit = degree_fit(&g)?;

    let mut ccdf = csv::Writer::from_writer(Vec::new());
    ccdf.write_record(["degree", "ccdf_empirical", "ccdf_fitted"]).map_err(csv_error)?;
    for p in &fit.ccdf_points {
        ccdf.write_record([p.degree.to_string(), p.empirical.to_string(), p.fitted.to_string()])
            .map_err(csv_error)?;
    }
    let summary = FitSummary {
        lambda: fit.lambda,
        d_min: fit.d_min,
        mean: fit.mean,
        vertex_count: fit.degrees.len(),
    };
    let mut json = serde_json::to_string(&summary).expect("fit serializes");
    json.push('\n');

    let mut inputs = vec![&graph_file];
    inputs.extend(hierarchy_file.as_ref());
    let mut out = OutputDir::create(&args.out, &inputs)?;
    out.write("ccdf.csv", &ccdf.into_inner().expect("in-memory writer"))?;
    out.write("fit.json", json.as_bytes())?;
    let mut manifest = Manifest::new("degree-fit");
    manifest.inputs.insert("graph", (&graph_file).into());
    if let Some(h) = &hierarchy_file {
        manifest.inputs.insert("hierarchy", h.into());
    }
    manifest.write(&mut out, "degree-fit-manifest.json")?;
    print!("{json}");
    Ok(())
}

pub fn resistance(args: &ResistanceArgs) -> CliResult<()> {
    let graph_file = read_input(&args.graph)?;
    let g = parse_graph(&graph_file)?;
    let ug = UndirectedGraph::symmetrize(&g);
    let calc = ResistanceCalculator::new(&ug)?;
    let name = |v: VertexId| g.name(v);

    let mut pairs: Vec<(VertexId, VertexId)> = if args.all_pairs {
        let ids: Vec<VertexId> = g.vertices().ids().collect();
        ids.iter()
            .flat_map(|&a| ids.iter().map(move |&b| (a, b)))
            .filter(|&(a, b)| name(a) < name(b))
            .collect()
    } else {
        ug.edges()
            .map(|(a, b, _)| if name(a) < name(b) { (a, b) } else { (b, a) })
            .collect()
    };
    pairs.sort_by(|&(a, b), &(c, d)| (name(a), name(b)).cmp(&(name(c), name(d))));

    let mut text = String::new();
    for (a, b) in pairs {
        writeln!(text, "{}\t{}\t{}", name(a), name(b), calc.resistance(a, b)?).unwrap();
    }
    print!("{text}");
    Ok(())
}
