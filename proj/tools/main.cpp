#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "proxemb/csv.hpp"
#include "proxemb/embedding.hpp"
#include "proxemb/eval.hpp"
#include "proxemb/graph.hpp"
#include "proxemb/graph_features.hpp"
#include "proxemb/pipeline_config.hpp"
#include "proxemb/synth.hpp"

using namespace proxemb;

namespace {

PipelineConfig make_config(const std::string& config_path,
                           const std::vector<std::string>& sets) {
    PipelineConfig cfg;
    if (!config_path.empty())
        cfg = PipelineConfig::load(config_path);
    for (const auto& kv : sets) {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw data_error("--set expects key=value, got '" + kv + "'");
        cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    return cfg;
}

std::string one_line(const std::string& multi) {
    std::string out;
    std::istringstream ss(multi);
    std::string line;
    while (std::getline(ss, line)) {
        if (line.empty())
            continue;
        if (!out.empty())
            out += "; ";
        out += line;
    }
    return out;
}

void print_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings)
        std::cerr << "warning: " << w << "\n";
}

// ---- node-embed ----------------------------------------------------------

void run_node_embed(const std::string& graph_path, bool weighted,
                    const std::string& out_path, const PipelineConfig& cfg) {
    LoadResult loaded = load_edge_list(graph_path, weighted);
    if (loaded.self_loops_dropped || loaded.duplicates_dropped)
        std::cerr << "note: dropped " << loaded.self_loops_dropped
                  << " self loop(s), " << loaded.duplicates_dropped
                  << " duplicate edge(s)\n";
    std::vector<std::string> warnings;
    Embedding emb = run_pipeline(loaded.graph, cfg, &warnings);
    print_warnings(warnings);
    write_matrix_csv(out_path, emb.y,
                     {"proxemb node-embed",
                      "graph = " + graph_path,
                      "nodes = " + std::to_string(loaded.graph.n) +
                          ", edges = " + std::to_string(loaded.graph.edge_count()),
                      "blocks = " + emb.provenance,
                      "config: " + one_line(cfg.serialize())},
                     loaded.node_ids);
    std::cout << "wrote " << out_path << " (" << emb.y.rows() << " x "
              << emb.y.cols() << ")\n";
}

// ---- graph-embed ---------------------------------------------------------

std::vector<std::string> read_path_list(const std::string& list_path) {
    std::ifstream in(list_path);
    if (!in)
        throw data_error("cannot open graph list: " + list_path);
    std::vector<std::string> paths;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos)
            continue;
        auto e = line.find_last_not_of(" \t\r");
        paths.push_back(line.substr(b, e - b + 1));
    }
    return paths;
}

void run_graph_embed(std::vector<std::string> graph_paths,
                     const std::string& list_path, bool weighted,
                     const std::string& out_path, const PipelineConfig& cfg) {
    if (!list_path.empty()) {
        auto more = read_path_list(list_path);
        graph_paths.insert(graph_paths.end(), more.begin(), more.end());
    }
    if (graph_paths.empty())
        throw data_error("graph-embed needs --graph or --list");
    std::vector<Graph> graphs;
    graphs.reserve(graph_paths.size());
    for (const auto& p : graph_paths)
        graphs.push_back(load_edge_list(p, weighted).graph);
    DenseMatrix x = embed_graph_set(graphs, cfg);
    write_matrix_csv(out_path, x,
                     {"proxemb graph-embed",
                      "graphs = " + std::to_string(graphs.size()),
                      "config: " + one_line(cfg.serialize())},
                     graph_paths);
    std::cout << "wrote " << out_path << " (" << x.rows() << " x " << x.cols()
              << ")\n";
}

// ---- synth ---------------------------------------------------------------

void run_synth(const std::string& shape_str, int n_shapes, int cycle_len,
               double noise, std::uint64_t seed, const std::string& out_path,
               const std::string& roles_path) {
    RoleGraph rg = generate_role_graph(shape_from_name(shape_str), n_shapes,
                                       cycle_len, noise, seed);
    std::ostringstream edges;
    edges << "# synthetic role graph: shape=" << shape_str
          << " n_shapes=" << n_shapes << " cycle_len=" << cycle_len
          << " noise=" << format_double(noise) << " seed=" << seed << "\n"
          << "# nodes=" << rg.graph.n << " edges=" << rg.graph.edge_count()
          << " base_edges=" << rg.base_edges << "\n";
    for (std::size_t i = 0; i < rg.graph.edges.size(); ++i)
        edges << rg.graph.edges[i][0] << " " << rg.graph.edges[i][1] << "\n";
    write_text_file(out_path, edges.str());
    std::cout << "wrote " << out_path << " (" << rg.graph.n << " nodes, "
              << rg.graph.edge_count() << " edges)\n";

    if (!roles_path.empty()) {
        std::ostringstream roles;
        roles << "# roles for " << out_path << "\n"
              << "# columns: node,role,role_name,orbit\n";
        for (int i = 0; i < rg.graph.n; ++i)
            roles << i << "," << rg.roles[i] << ","
                  << rg.role_names[rg.roles[i]] << "," << rg.orbits[i] << "\n";
        write_text_file(roles_path, roles.str());
        std::cout << "wrote " << roles_path << "\n";
    }
}

// ---- eval ----------------------------------------------------------------

std::vector<int> align_labels(const CsvMatrix& emb, const std::string& labels_path) {
    auto kv = read_label_csv(labels_path);
    std::map<std::string, int> by_id(kv.begin(), kv.end());
    std::vector<int> labels;
    labels.reserve(emb.row_ids.size());
    for (const auto& id : emb.row_ids) {
        auto it = by_id.find(id);
        if (it == by_id.end())
            throw data_error("no label for node '" + id + "' in " + labels_path);
        labels.push_back(it->second);
    }
    return labels;
}

void run_eval(const std::string& emb_path, const std::string& labels_path,
              const std::string& task, double train_frac, int k,
              std::uint64_t seed, const std::string& json_path) {
    CsvMatrix emb = read_matrix_csv(emb_path);
    if (emb.m.rows() == 0)
        throw data_error("embedding csv is empty: " + emb_path);
    std::vector<int> labels = align_labels(emb, labels_path);
    nlohmann::json j;
    j["task"] = task;
    j["embedding"] = emb_path;

    if (task == "classify") {
        ClassifyResult r = classify_nodes(emb.m, labels, train_frac, seed);
        std::cout << "micro_f1 = " << format_double(r.micro_f1) << "\n"
                  << "train_size = " << r.train_size << "\n"
                  << "test_size = " << r.test_size << "\n";
        j["micro_f1"] = r.micro_f1;
        j["train_size"] = r.train_size;
        j["test_size"] = r.test_size;
    } else if (task == "cluster") {
        if (k <= 0) {
            std::vector<int> u = labels;
            std::sort(u.begin(), u.end());
            k = int(std::unique(u.begin(), u.end()) - u.begin());
        }
        std::vector<int> pred = cluster_nodes(emb.m, k);
        ClusterScores sc = cluster_scores(labels, pred);
        std::cout << "k = " << k << "\n"
                  << "homogeneity = " << format_double(sc.homogeneity) << "\n"
                  << "completeness = " << format_double(sc.completeness) << "\n";
        j["k"] = k;
        j["homogeneity"] = sc.homogeneity;
        j["completeness"] = sc.completeness;
        if (k >= 2 && k <= int(emb.m.rows())) {
            double sil = silhouette(emb.m, pred);
            std::cout << "silhouette = " << format_double(sil) << "\n";
            j["silhouette"] = sil;
        }
    } else {
        throw data_error("unknown eval task '" + task +
                         "' (expected classify or cluster)");
    }
    if (!json_path.empty()) {
        write_text_file(json_path, j.dump(2) + "\n");
        std::cout << "wrote " << json_path << "\n";
    }
}

// ---- sweep ---------------------------------------------------------------

struct SweepCell {
    std::string left, right; // display fields (operator, filter-or-order)
    PipelineConfig cfg;
};

struct CellOutcome {
    double metric = std::numeric_limits<double>::quiet_NaN();
    double extra = std::numeric_limits<double>::quiet_NaN();
    std::string error;
};

struct FilterChoice {
    const char* label;
    Filter f;
    double p;
};

constexpr FilterChoice kFilterGrid[] = {{"identity", Filter::identity, 0.0},
                                        {"log", Filter::log, 0.0},
                                        {"bin5", Filter::bin, 5.0},
                                        {"bin50", Filter::bin, 50.0},
                                        {"bin95", Filter::bin, 95.0}};

constexpr ProximityOp kOpGrid[] = {
    ProximityOp::ppmi,     ProximityOp::heat,      ProximityOp::fabp,
    ProximityOp::ppr,      ProximityOp::lap_pinv,  ProximityOp::adj_power,
    ProximityOp::rw_power};

CellOutcome run_cell(const Graph& g, const PipelineConfig& cfg,
                     const std::vector<int>& labels, const std::string& task,
                     double train_frac, int k) {
    CellOutcome out;
    try {
        Embedding emb = run_pipeline(g, cfg);
        if (task == "classify") {
            out.metric =
                classify_nodes(emb.y, labels, train_frac, cfg.seed).micro_f1;
        } else {
            std::vector<int> pred = cluster_nodes(emb.y, k);
            ClusterScores sc = cluster_scores(labels, pred);
            out.metric = sc.homogeneity;
            out.extra = sc.completeness;
        }
    } catch (const std::exception& e) {
        out.error = e.what();
    }
    return out;
}

// competition ranking, best metric first; equal metrics share their mean
// position and failed cells sink to the bottom
std::vector<double> rank_metrics(const std::vector<CellOutcome>& cells) {
    std::vector<int> order(cells.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = int(i);
    auto value = [&](int i) {
        return std::isnan(cells[i].metric)
                   ? -std::numeric_limits<double>::infinity()
                   : cells[i].metric;
    };
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return value(a) > value(b); });
    std::vector<double> ranks(cells.size(), 0.0);
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j < order.size() && value(order[j]) == value(order[i]))
            ++j;
        double mean_pos = (double(i) + double(j - 1)) / 2.0 + 1.0;
        for (std::size_t t = i; t < j; ++t)
            ranks[order[t]] = mean_pos;
        i = j;
    }
    return ranks;
}

void run_sweep(const std::string& graph_path, bool weighted,
               const std::string& labels_path, const std::string& task,
               double train_frac, int k, int order_sweep,
               const std::string& out_path, const PipelineConfig& base) {
    LoadResult loaded = load_edge_list(graph_path, weighted);
    auto kv = read_label_csv(labels_path);
    std::map<std::string, int> by_id(kv.begin(), kv.end());
    std::vector<int> labels;
    for (const auto& id : loaded.node_ids) {
        auto it = by_id.find(id);
        if (it == by_id.end())
            throw data_error("no label for node '" + id + "' in " + labels_path);
        labels.push_back(it->second);
    }
    if (task != "classify" && task != "cluster")
        throw data_error("unknown sweep task '" + task +
                         "' (expected classify or cluster)");
    if (k <= 0) {
        std::vector<int> u = labels;
        std::sort(u.begin(), u.end());
        k = int(std::unique(u.begin(), u.end()) - u.begin());
    }

    std::vector<SweepCell> cells;
    if (order_sweep > 0) {
        // proximity-order sweep: walk lengths 1..K for the two power operators
        for (ProximityOp op : {ProximityOp::adj_power, ProximityOp::rw_power})
            for (int kk = 1; kk <= order_sweep; ++kk) {
                PipelineConfig cfg = base;
                cfg.proximity = op;
                cfg.power_k = kk;
                cells.push_back(
                    {proximity_name(op), std::to_string(kk), std::move(cfg)});
            }
    } else {
        for (ProximityOp op : kOpGrid)
            for (const auto& fc : kFilterGrid) {
                PipelineConfig cfg = base;
                cfg.proximity = op;
                cfg.filter = fc.f;
                cfg.filter_p = fc.p;
                cells.push_back({proximity_name(op), fc.label, std::move(cfg)});
            }
    }

    // cells are pure; run them concurrently, then join in grid order so the
    // table is deterministic
    std::vector<std::future<CellOutcome>> futures;
    futures.reserve(cells.size());
    for (const auto& cell : cells)
        futures.push_back(std::async(std::launch::async, [&, cfg = cell.cfg] {
            return run_cell(loaded.graph, cfg, labels, task, train_frac, k);
        }));
    std::vector<CellOutcome> outcomes;
    outcomes.reserve(cells.size());
    for (auto& f : futures)
        outcomes.push_back(f.get());

    std::vector<double> ranks = rank_metrics(outcomes);

    std::ostringstream out;
    const char* left_col = "proximity";
    const char* right_col = order_sweep > 0 ? "k" : "filter";
    const char* metric_col = task == "classify" ? "micro_f1" : "homogeneity";
    out << "# proxemb sweep\n# graph = " << graph_path << "\n# task = " << task
        << "\n# columns: " << left_col << "," << right_col << "," << metric_col
        << (task == "cluster" ? ",completeness" : "") << ",rank,error\n";
    for (std::size_t i = 0; i < cells.size(); ++i) {
        out << cells[i].left << "," << cells[i].right << ","
            << (std::isnan(outcomes[i].metric)
                    ? "nan"
                    : format_double(outcomes[i].metric));
        if (task == "cluster")
            out << ","
                << (std::isnan(outcomes[i].extra)
                        ? "nan"
                        : format_double(outcomes[i].extra));
        out << "," << format_double(ranks[i]) << "," << outcomes[i].error
            << "\n";
    }

    auto aggregate = [&](const std::string& kind, const std::string& name,
                         auto&& belongs) {
        double sum = 0.0, best = -std::numeric_limits<double>::infinity();
        double rank_sum = 0.0;
        int good = 0, total = 0;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (!belongs(i))
                continue;
            ++total;
            rank_sum += ranks[i];
            if (!std::isnan(outcomes[i].metric)) {
                sum += outcomes[i].metric;
                best = std::max(best, outcomes[i].metric);
                ++good;
            }
        }
        out << "# aggregate " << kind << " " << name << ": mean="
            << (good ? format_double(sum / good) : "nan") << " best="
            << (good ? format_double(best) : "nan")
            << " mean_rank=" << format_double(rank_sum / std::max(total, 1))
            << "\n";
    };
    for (ProximityOp op : kOpGrid) {
        std::string name = proximity_name(op);
        if (order_sweep > 0 &&
            op != ProximityOp::adj_power && op != ProximityOp::rw_power)
            continue;
        aggregate("proximity", name,
                  [&](std::size_t i) { return cells[i].left == name; });
    }
    if (order_sweep > 0) {
        for (int kk = 1; kk <= order_sweep; ++kk)
            aggregate("k", std::to_string(kk), [&](std::size_t i) {
                return cells[i].right == std::to_string(kk);
            });
    } else {
        for (const auto& fc : kFilterGrid)
            aggregate("filter", fc.label, [&](std::size_t i) {
                return cells[i].right == fc.label;
            });
    }

    write_text_file(out_path, out.str());
    std::cout << "wrote " << out_path << " (" << cells.size() << " cells)\n";
}

// ---- diagnose ------------------------------------------------------------

void run_diagnose(const std::string& graph_path, bool weighted,
                  const std::string& out_dir, const PipelineConfig& base) {
    LoadResult loaded = load_edge_list(graph_path, weighted);
    std::filesystem::create_directories(out_dir);

    std::ostringstream hist;
    hist << "# proxemb diagnose histograms\n# graph = " << graph_path
         << "\n# columns: proximity,filter,stat,bin,lo,hi,count\n";

    auto histogram = [&](const std::string& op, const std::string& fl,
                         const std::string& stat, const Vector& v) {
        constexpr int bins = 20;
        double lo = v.minCoeff(), hi = v.maxCoeff();
        double width = (hi - lo) / bins;
        std::vector<int> count(bins, 0);
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            int b = width == 0.0
                        ? 0
                        : std::min(bins - 1, int((v[i] - lo) / width));
            ++count[b];
        }
        for (int b = 0; b < bins; ++b)
            hist << op << "," << fl << "," << stat << "," << b << ","
                 << format_double(lo + b * width) << ","
                 << format_double(width == 0.0 ? hi : lo + (b + 1) * width)
                 << "," << count[b] << "\n";
    };

    for (ProximityOp op : kOpGrid) {
        for (const auto& fc : kFilterGrid) {
            PipelineConfig cfg = base;
            cfg.proximity = op;
            std::string op_name = proximity_name(op);
            try {
                ProximityMatrix prox = pipeline_proximity(loaded.graph, cfg);
                ProximityMatrix filtered = apply_filter(prox, fc.f, fc.p);
                RowStats rs = row_stats(filtered.m);
                DenseMatrix table(filtered.m.rows(), 4);
                table.col(0) = rs.sums;
                table.col(1) = rs.variances;
                table.col(2) = rs.entropies;
                table.col(3).setZero();
                for (int i : rs.near_zero_rows)
                    table(i, 3) = 1.0;
                std::string path = out_dir + "/rowstats_" + op_name + "_" +
                                   fc.label + ".csv";
                write_matrix_csv(
                    path, table,
                    {"proxemb diagnose", "graph = " + graph_path,
                     "proximity = " + op_name,
                     "filter = " + std::string(fc.label),
                     "columns: node,sum,variance,entropy,near_zero"},
                    loaded.node_ids);
                histogram(op_name, fc.label, "sum", rs.sums);
                histogram(op_name, fc.label, "variance", rs.variances);
                histogram(op_name, fc.label, "entropy", rs.entropies);
            } catch (const std::exception& e) {
                hist << "# error " << op_name << " " << fc.label << ": "
                     << e.what() << "\n";
            }
        }
    }
    write_text_file(out_dir + "/histograms.csv", hist.str());
    std::cout << "wrote " << out_dir << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"node and graph embeddings from filtered proximity matrices"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> sets;
    app.add_option("--config", config_path, "pipeline config file");
    app.add_option("--set", sets, "override a config entry, key=value");

    auto* ne = app.add_subcommand("node-embed", "embed the nodes of one graph");
    ne->fallthrough();
    std::string ne_graph, ne_out;
    bool ne_weighted = false;
    ne->add_option("--graph", ne_graph, "edge list file")->required();
    ne->add_flag("--weighted", ne_weighted, "edge list has 'u v w' lines");
    ne->add_option("--out", ne_out, "output csv")->required();

    auto* ge = app.add_subcommand("graph-embed",
                                  "feature vectors for a set of graphs");
    ge->fallthrough();
    std::vector<std::string> ge_graphs;
    std::string ge_list, ge_out;
    bool ge_weighted = false;
    ge->add_option("--graph", ge_graphs, "edge list file (repeatable)");
    ge->add_option("--list", ge_list, "file with one edge list path per line");
    ge->add_flag("--weighted", ge_weighted, "edge lists have 'u v w' lines");
    ge->add_option("--out", ge_out, "output csv")->required();

    auto* sy = app.add_subcommand("synth", "generate a role-labelled graph");
    sy->fallthrough();
    std::string sy_shape = "house", sy_out, sy_roles;
    int sy_shapes = 5, sy_cycle = 30;
    double sy_noise = 0.0;
    std::uint64_t sy_seed = 0;
    sy->add_option("--shape", sy_shape, "house, fan or star");
    sy->add_option("--n-shapes", sy_shapes, "shape copies (default 5)");
    sy->add_option("--cycle-len", sy_cycle, "cycle length (default 30)");
    sy->add_option("--noise", sy_noise, "extra-edge fraction (default 0)");
    sy->add_option("--seed", sy_seed, "noise seed");
    sy->add_option("--out", sy_out, "edge list output")->required();
    sy->add_option("--roles-out", sy_roles, "role csv output");

    auto* ev = app.add_subcommand("eval", "score an embedding against labels");
    ev->fallthrough();
    std::string ev_emb, ev_labels, ev_task, ev_json;
    double ev_frac = 0.8;
    int ev_k = 0;
    std::uint64_t ev_seed = 0;
    ev->add_option("--emb", ev_emb, "embedding csv")->required();
    ev->add_option("--labels", ev_labels, "label csv")->required();
    ev->add_option("--task", ev_task, "classify or cluster")->required();
    ev->add_option("--train-frac", ev_frac, "train fraction (default 0.8)");
    ev->add_option("--k", ev_k, "cluster count (default: distinct labels)");
    ev->add_option("--seed", ev_seed, "split seed");
    ev->add_option("--json", ev_json, "also write metrics as json");

    auto* sw = app.add_subcommand(
        "sweep", "score every proximity/filter combination on one graph");
    sw->fallthrough();
    std::string sw_graph, sw_labels, sw_task = "classify", sw_out;
    bool sw_weighted = false;
    double sw_frac = 0.8;
    int sw_k = 0, sw_order = 0;
    sw->add_option("--graph", sw_graph, "edge list file")->required();
    sw->add_flag("--weighted", sw_weighted, "edge list has 'u v w' lines");
    sw->add_option("--labels", sw_labels, "label csv")->required();
    sw->add_option("--task", sw_task, "classify or cluster (default classify)");
    sw->add_option("--train-frac", sw_frac, "train fraction (default 0.8)");
    sw->add_option("--k", sw_k, "cluster count (default: distinct labels)");
    sw->add_option("--order-sweep", sw_order,
                   "sweep walk length 1..K for the power operators instead");
    sw->add_option("--out", sw_out, "output table csv")->required();

    auto* dg = app.add_subcommand(
        "diagnose", "row statistics for every proximity/filter combination");
    dg->fallthrough();
    std::string dg_graph, dg_out;
    bool dg_weighted = false;
    dg->add_option("--graph", dg_graph, "edge list file")->required();
    dg->add_flag("--weighted", dg_weighted, "edge list has 'u v w' lines");
    dg->add_option("--out", dg_out, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        PipelineConfig cfg = make_config(config_path, sets);
        if (app.got_subcommand(ne))
            run_node_embed(ne_graph, ne_weighted, ne_out, cfg);
        else if (app.got_subcommand(ge))
            run_graph_embed(ge_graphs, ge_list, ge_weighted, ge_out, cfg);
        else if (app.got_subcommand(sy))
            run_synth(sy_shape, sy_shapes, sy_cycle, sy_noise, sy_seed, sy_out,
                      sy_roles);
        else if (app.got_subcommand(ev))
            run_eval(ev_emb, ev_labels, ev_task, ev_frac, ev_k, ev_seed,
                     ev_json);
        else if (app.got_subcommand(sw))
            run_sweep(sw_graph, sw_weighted, sw_labels, sw_task, sw_frac, sw_k,
                      sw_order, sw_out, cfg);
        else if (app.got_subcommand(dg))
            run_diagnose(dg_graph, dg_weighted, dg_out, cfg);
    } catch (const data_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const numerical_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
