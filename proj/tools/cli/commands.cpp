// SPDX-License-Identifier: Apache-2.0
//
// cbf-toolkit: complementary beam pairs for omni-directional broadcast
// Copyright (C) 2026 The cbf-toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "commands.hpp"
#include "svg.hpp"

#include "cbf/array.hpp"
#include "cbf/codebook.hpp"
#include "cbf/format.hpp"
#include "cbf/linksim.hpp"
#include "cbf/pattern.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;

namespace cbf::cli
{
    struct Globals
    {
        std::uint64_t seed = 1;
        std::string out_dir = ".";
        std::size_t grid_points = 4096;
    };
    NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(Globals, seed, out_dir, grid_points)

    struct GeometryOptions
    {
        std::size_t ula = 0;
        std::string upa; // "NXxNY"
        double spacing = 0.5;
    };
    NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(GeometryOptions, ula, upa, spacing)

    struct VectorOptions
    {
        std::string codebook;
        std::vector<std::string> phases;
        std::vector<std::string> weights;
        int k = 2;
        bool rbf_basis = false;
    };
    NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(VectorOptions, codebook, phases, weights, k, rbf_basis)

    struct SearchOptions
    {
        GeometryOptions geometry;
        int k = 2;
        std::string mode = "exhaustive";
        std::uint64_t budget = 1u << 20;
        std::size_t set_size = 2;
        std::string output = "codebook.txt";
    };
    NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(SearchOptions, geometry, k, mode, budget, set_size, output)

    struct PatternOptions
    {
        GeometryOptions geometry;
        VectorOptions vectors;
        std::size_t phi_points = 180;
        bool svg = false;
    };
    NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(PatternOptions, geometry, vectors, phi_points, svg)

    struct SimulateOptions
    {
        GeometryOptions geometry;
        std::string scheme = "cbf";
        std::string channel = "awgn";
        std::string snr = "0:2:10";
        double angle = 0.0;
        std::string angles = "0,45,90,135";
        std::uint64_t bits = 10'000'000;
        std::size_t block_len = 100;
        std::string codebook;
        bool no_early_stop = false;
        unsigned threads = 0;
        bool svg = false;
    };
    NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(SimulateOptions, geometry, scheme, channel, snr, angle, angles, bits, block_len,
                                       codebook, no_early_stop, threads, svg)

    std::vector<double> parse_number_list(const std::string &text)
    {
        auto fail = [&] { return std::invalid_argument("invalid number list '" + text + "'"); };
        std::vector<double> out;
        try
        {
            if (text.find(':') != std::string::npos)
            {
                std::vector<double> parts;
                std::stringstream ss(text);
                for (std::string tok; std::getline(ss, tok, ':');)
                    parts.push_back(parse_double(tok));
                if (parts.size() != 3 || !(parts[1] > 0.0) || parts[2] < parts[0])
                    throw fail();
                const auto n = static_cast<std::size_t>(std::floor((parts[2] - parts[0]) / parts[1] + 1e-9)) + 1;
                for (std::size_t i = 0; i < n; ++i)
                    out.push_back(parts[0] + static_cast<double>(i) * parts[1]);
            }
            else
            {
                std::stringstream ss(text);
                for (std::string tok; std::getline(ss, tok, ',');)
                    out.push_back(parse_double(tok));
            }
        }
        catch (const std::invalid_argument &)
        {
            throw fail();
        }
        if (out.empty())
            throw fail();
        for (double v : out)
            if (!std::isfinite(v))
                throw fail();
        return out;
    }

    namespace
    {
        class UsageError : public std::invalid_argument
        {
        public:
            using std::invalid_argument::invalid_argument;
        };

        ArrayGeometry make_geometry(const GeometryOptions &g)
        {
            if (g.ula && !g.upa.empty())
                throw UsageError("--ula and --upa are mutually exclusive");
            if (!g.upa.empty())
            {
                const auto x = g.upa.find('x');
                if (x == std::string::npos)
                    throw UsageError("--upa expects NXxNY, e.g. 4x4");
                try
                {
                    return ArrayGeometry::upa(std::stoul(g.upa.substr(0, x)), std::stoul(g.upa.substr(x + 1)),
                                              g.spacing, g.spacing);
                }
                catch (const std::logic_error &e)
                {
                    throw UsageError(std::string("--upa: ") + e.what());
                }
            }
            return ArrayGeometry::ula(g.ula ? g.ula : 8, g.spacing);
        }

        bool geometry_given(const GeometryOptions &g) { return g.ula || !g.upa.empty(); }

        AngularGrid make_grid(const ArrayGeometry &geom, const Globals &globals, std::size_t phi_points = 180)
        {
            if (globals.grid_points < 4)
                throw UsageError("--grid-points must be at least 4");
            return geom.kind == ArrayKind::ULA ? AngularGrid::azimuth(globals.grid_points)
                                               : AngularGrid::planar(phi_points, globals.grid_points);
        }

        Codebook load_codebook(const std::string &path)
        {
            std::ifstream in(path);
            if (!in)
                throw std::runtime_error("cannot open codebook file '" + path + "'");
            return read_codebook(in);
        }

        std::vector<std::string> split(const std::string &s, char sep)
        {
            std::vector<std::string> out;
            std::stringstream ss(s);
            for (std::string tok; std::getline(ss, tok, sep);)
                out.push_back(tok);
            return out;
        }

        // "re:im,re:im,..." or "re,re,..."
        WeightVector parse_weights(const std::string &text)
        {
            WeightVector w;
            for (const auto &tok : split(text, ','))
            {
                const auto c = tok.find(':');
                try
                {
                    if (c == std::string::npos)
                        w.coeffs.emplace_back(parse_double(tok), 0.0);
                    else
                        w.coeffs.emplace_back(parse_double(tok.substr(0, c)), parse_double(tok.substr(c + 1)));
                }
                catch (const std::invalid_argument &)
                {
                    throw std::invalid_argument("malformed weight entry '" + tok + "' in '" + text + "'");
                }
            }
            return w;
        }

        std::vector<int> parse_phases(const std::string &text, int K)
        {
            std::vector<int> p;
            for (const auto &tok : split(text, ','))
            {
                std::size_t used = 0;
                int v = 0;
                try
                {
                    v = std::stoi(tok, &used);
                }
                catch (const std::logic_error &)
                {
                    used = 0;
                }
                if (used != tok.size() || tok.empty() || v < 0 || v >= K)
                    throw std::invalid_argument("malformed phase index '" + tok + "' (need 0 <= k < " +
                                                std::to_string(K) + ")");
                p.push_back(v);
            }
            return p;
        }

        struct VectorSet
        {
            ArrayGeometry geom;
            std::vector<WeightVector> vectors;
        };

        VectorSet resolve_vectors(const GeometryOptions &gopt, const VectorOptions &v)
        {
            VectorSet out;
            if (!v.codebook.empty())
            {
                const Codebook cb = load_codebook(v.codebook);
                if (geometry_given(gopt) && make_geometry(gopt) != cb.geometry)
                    throw UsageError("geometry flags disagree with the codebook file");
                out.geom = cb.geometry;
                out.vectors = cb.set.vectors;
            }
            else
                out.geom = make_geometry(gopt);
            if (v.rbf_basis)
                out.vectors.push_back(rbf_reference_basis());
            for (const auto &p : v.phases)
                out.vectors.push_back(WeightVector::from_phases(parse_phases(p, v.k), v.k));
            for (const auto &w : v.weights)
                out.vectors.push_back(parse_weights(w));
            if (out.vectors.empty())
                throw UsageError("no weight vectors: give --codebook, --phases, --weights or --rbf-basis");
            for (const auto &w : out.vectors)
                if (w.size() != out.geom.size())
                    throw std::invalid_argument("weight vector has " + std::to_string(w.size()) +
                                                " entries but the array has " + std::to_string(out.geom.size()));
            return out;
        }

        fs::path prepare_out_dir(const Globals &g)
        {
            fs::path dir(g.out_dir);
            fs::create_directories(dir);
            return dir;
        }

        void write_file(const fs::path &path, const std::string &contents)
        {
            std::ofstream f(path, std::ios::binary);
            if (!f)
                throw std::runtime_error("cannot write '" + path.string() + "'");
            f << contents;
        }

        // Manifest paths are made absolute so a replay works from any directory.
        std::string absolute_or_empty(const std::string &p)
        {
            return p.empty() ? p : fs::absolute(p).lexically_normal().string();
        }

        void write_manifest(const fs::path &dir, const std::string &command, const Globals &g, const json &options,
                            const std::vector<std::string> &outputs)
        {
            json m;
            m["tool"] = "cbf";
            m["version"] = kToolVersion;
            m["command"] = command;
            m["seed"] = g.seed;
            m["globals"] = g;
            m["options"] = options;
            m["outputs"] = outputs;
            write_file(dir / (command + ".manifest.json"), m.dump(2) + "\n");
        }

        int cmd_search(SearchOptions o, const Globals &g, std::ostream &out)
        {
            const ArrayGeometry geom = make_geometry(o.geometry);
            SearchConfig cfg;
            cfg.K = o.k;
            cfg.mode = parse_search_mode(o.mode);
            cfg.budget = o.budget;
            cfg.seed = g.seed;
            cfg.set_size = o.set_size;
            cfg.grid = make_grid(geom, g);

            const auto t0 = std::chrono::steady_clock::now();
            const ComplementarySet set = search_complementary(geom, cfg);
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

            const fs::path dir = prepare_out_dir(g);
            std::ostringstream cb;
            write_codebook(cb, Codebook{geom, cfg.mode, g.seed, set});
            write_file(dir / o.output, cb.str());
            write_manifest(dir, "search", g, o, {o.output});

            out << "N = " << geom.size() << ", K = " << cfg.K << ", mode = " << to_string(cfg.mode) << '\n';
            for (std::size_t i = 0; i < set.phases.size(); ++i)
            {
                out << "w" << i + 1 << " phases:";
                for (int p : set.phases[i])
                    out << ' ' << p;
                out << '\n';
            }
            out << "composite_variance = " << format_double(set.composite_variance) << '\n';
            out << (set.composite_variance < kZeroVariance ? "flat composite pattern (variance below 1e-12)\n"
                                                           : "minimum composite variance is strictly positive\n");
            out << "wall_time_s = " << secs << '\n';
            out << "codebook written to " << (dir / o.output).string() << '\n';
            return 0;
        }

        int cmd_pattern(PatternOptions o, const Globals &g, std::ostream &out)
        {
            o.vectors.codebook = absolute_or_empty(o.vectors.codebook);
            const VectorSet vs = resolve_vectors(o.geometry, o.vectors);
            const AngularGrid grid = make_grid(vs.geom, g, o.phi_points);
            const fs::path dir = prepare_out_dir(g);

            std::vector<std::string> outputs;
            std::vector<BeamPattern> patterns;
            std::vector<svg::PolarTrace> traces;
            // Polar traces use the azimuth cut nearest the horizon.
            const std::size_t cut = grid.phis.size() / 2;
            for (std::size_t i = 0; i < vs.vectors.size(); ++i)
            {
                patterns.push_back(evaluate_pattern(vs.vectors[i], vs.geom, grid));
                std::ostringstream csv;
                write_pattern_csv(csv, patterns.back(), grid);
                const std::string name = "pattern_w" + std::to_string(i + 1) + ".csv";
                write_file(dir / name, csv.str());
                outputs.push_back(name);

                svg::PolarTrace t{"w" + std::to_string(i + 1), grid.thetas, {}};
                for (std::size_t it = 0; it < grid.thetas.size(); ++it)
                    t.radii.push_back(std::abs(patterns.back().at(cut, it)));
                traces.push_back(std::move(t));
                out << "w" << i + 1 << ": variance canonical = " << format_double(pattern_variance(patterns.back()))
                    << ", paper-integral = "
                    << format_double(pattern_variance(patterns.back(), VarianceMode::PaperIntegral)) << '\n';
            }
            if (patterns.size() >= 2)
            {
                const RealGrid comp = composite_amplitude(patterns);
                std::ostringstream csv;
                write_amplitude_csv(csv, comp, grid);
                write_file(dir / "composite.csv", csv.str());
                outputs.push_back("composite.csv");

                svg::PolarTrace t{"composite", grid.thetas, {}};
                for (std::size_t it = 0; it < grid.thetas.size(); ++it)
                    t.radii.push_back(comp.at(cut, it));
                traces.push_back(std::move(t));

                RealGrid power = comp;
                for (auto &v : power.values)
                    v *= v;
                out << "composite: variance canonical = " << format_double(pattern_variance(power))
                    << ", paper-integral = " << format_double(pattern_variance(power, VarianceMode::PaperIntegral))
                    << '\n';
            }
            if (o.svg)
            {
                write_file(dir / "polar.svg", svg::polar_plot(traces, "|g(theta)|, per-element normalized"));
                outputs.push_back("polar.svg");
            }
            write_manifest(dir, "pattern", g, o, outputs);
            return 0;
        }

        int cmd_variance(PatternOptions o, const Globals &g, std::ostream &out)
        {
            o.vectors.codebook = absolute_or_empty(o.vectors.codebook);
            const VectorSet vs = resolve_vectors(o.geometry, o.vectors);
            const AngularGrid grid = make_grid(vs.geom, g, o.phi_points);
            const fs::path dir = prepare_out_dir(g);

            std::ostringstream rep;
            rep << "# pattern variance report\n";
            rep << "N = " << vs.geom.size() << '\n';
            rep << "grid_points = " << grid.size() << '\n';
            for (std::size_t i = 0; i < vs.vectors.size(); ++i)
            {
                const BeamPattern p = evaluate_pattern(vs.vectors[i], vs.geom, grid);
                const std::string key = "w" + std::to_string(i + 1);
                rep << key << ".canonical = " << format_double(pattern_variance(p)) << '\n';
                rep << key << ".paper_integral = " << format_double(pattern_variance(p, VarianceMode::PaperIntegral))
                    << '\n';
                rep << key << ".pa_efficiency = " << format_double(pa_efficiency(vs.vectors[i])) << '\n';
            }
            if (vs.vectors.size() >= 2)
            {
                rep << "composite.canonical = " << format_double(composite_variance(vs.vectors, vs.geom, grid)) << '\n';
                rep << "composite.paper_integral = "
                    << format_double(composite_variance(vs.vectors, vs.geom, grid, VarianceMode::PaperIntegral)) << '\n';
            }
            write_file(dir / "variance.txt", rep.str());
            write_manifest(dir, "variance", g, o, {"variance.txt"});
            out << rep.str();
            return 0;
        }

        SimConfig make_sim_config(const SimulateOptions &o, const Globals &g)
        {
            SimConfig cfg;
            cfg.scheme = parse_scheme(o.scheme);
            cfg.channel = parse_channel(o.channel);
            try
            {
                cfg.snr_db_list = parse_number_list(o.snr);
            }
            catch (const std::invalid_argument &)
            {
                throw UsageError("invalid SNR list '" + o.snr + "' (use start:step:stop or a,b,c)");
            }
            cfg.block_len = o.block_len;
            cfg.total_bits = o.bits;
            cfg.seed = g.seed;
            cfg.early_stop = !o.no_early_stop;
            cfg.threads = o.threads;
            cfg.angle.azimuth = o.angle * std::numbers::pi / 180.0;
            if (!o.codebook.empty())
            {
                const Codebook cb = load_codebook(o.codebook);
                if (geometry_given(o.geometry) && make_geometry(o.geometry) != cb.geometry)
                    throw UsageError("geometry flags disagree with the codebook file");
                cfg.geom = cb.geometry;
                cfg.codebook = cb.set;
            }
            else
                cfg.geom = make_geometry(o.geometry);
            if (cfg.geom.kind == ArrayKind::UPA)
                cfg.angle.elevation = std::numbers::pi / 2.0;
            return cfg;
        }

        std::vector<svg::BerTrace> ber_traces(const std::vector<BerCurve> &curves)
        {
            std::vector<svg::BerTrace> t;
            for (const auto &c : curves)
                t.push_back({to_string(c.scheme) + " @ " + format_double(c.angle_deg) + " deg", c.snr_db, c.ber});
            return t;
        }

        int cmd_simulate(SimulateOptions o, const Globals &g, std::ostream &out)
        {
            o.codebook = absolute_or_empty(o.codebook);
            const SimConfig cfg = make_sim_config(o, g);
            const fs::path dir = prepare_out_dir(g);
            const std::vector<BerCurve> curves{run_ber(cfg)};

            std::ostringstream csv;
            write_ber_csv(csv, curves);
            write_file(dir / "ber.csv", csv.str());
            std::vector<std::string> outputs{"ber.csv"};
            if (o.svg)
            {
                write_file(dir / "ber.svg", svg::semilog_plot(ber_traces(curves), "Uncoded BER, " + o.channel));
                outputs.push_back("ber.svg");
            }
            write_manifest(dir, "simulate", g, o, outputs);
            out << csv.str();
            return 0;
        }

        int cmd_sweep(SimulateOptions o, const Globals &g, std::ostream &out)
        {
            o.codebook = absolute_or_empty(o.codebook);
            const SimConfig cfg = make_sim_config(o, g);
            std::vector<double> angles;
            try
            {
                angles = parse_number_list(o.angles);
            }
            catch (const std::invalid_argument &)
            {
                throw UsageError("invalid angle list '" + o.angles + "'");
            }
            for (auto &a : angles)
                a *= std::numbers::pi / 180.0;
            const fs::path dir = prepare_out_dir(g);
            const std::vector<BerCurve> curves = angle_sweep(cfg, angles);

            std::ostringstream csv;
            write_ber_csv(csv, curves);
            write_file(dir / "ber_sweep.csv", csv.str());
            std::vector<std::string> outputs{"ber_sweep.csv"};
            if (o.svg)
            {
                write_file(dir / "ber_sweep.svg", svg::semilog_plot(ber_traces(curves), "BER per angle, " + o.channel));
                outputs.push_back("ber_sweep.svg");
            }
            write_manifest(dir, "sweep-angles", g, o, outputs);
            out << csv.str();
            return 0;
        }

        int replay(const std::string &manifest_path, const std::string &out_dir, std::ostream &out)
        {
            std::ifstream in(manifest_path);
            if (!in)
                throw std::runtime_error("cannot open manifest '" + manifest_path + "'");
            const json m = json::parse(in);
            if (m.at("tool") != "cbf")
                throw std::runtime_error("not a cbf manifest: " + manifest_path);
            Globals g = m.at("globals").get<Globals>();
            g.out_dir = out_dir.empty() ? fs::path(manifest_path).parent_path().string() : out_dir;
            if (g.out_dir.empty())
                g.out_dir = ".";
            const std::string cmd = m.at("command");
            const json &opts = m.at("options");
            if (cmd == "search")
                return cmd_search(opts.get<SearchOptions>(), g, out);
            if (cmd == "pattern")
                return cmd_pattern(opts.get<PatternOptions>(), g, out);
            if (cmd == "variance")
                return cmd_variance(opts.get<PatternOptions>(), g, out);
            if (cmd == "simulate")
                return cmd_simulate(opts.get<SimulateOptions>(), g, out);
            if (cmd == "sweep-angles")
                return cmd_sweep(opts.get<SimulateOptions>(), g, out);
            throw std::runtime_error("manifest names unknown command '" + cmd + "'");
        }

        void add_geometry(CLI::App *app, GeometryOptions &g)
        {
            app->add_option("--ula", g.ula, "Uniform linear array with N elements (default 8)");
            app->add_option("--upa", g.upa, "Uniform planar array, NXxNY (e.g. 4x4)");
            app->add_option("--spacing", g.spacing, "Element spacing in wavelengths")->check(CLI::PositiveNumber);
        }

        void add_vectors(CLI::App *app, VectorOptions &v)
        {
            app->add_option("--codebook", v.codebook, "Codebook file written by 'search'");
            app->add_option("--phases", v.phases, "Weight vector as comma-separated phase indices (repeatable)");
            app->add_option("--weights", v.weights, "Weight vector as comma-separated re:im entries (repeatable)");
            app->add_option("--k", v.k, "Phase alphabet size for --phases")->check(CLI::Range(2, 1 << 16));
            app->add_flag("--rbf-basis", v.rbf_basis, "Use the 8-element random-beamforming basis vector");
        }

        void add_sim(CLI::App *app, SimulateOptions &s)
        {
            add_geometry(app, s.geometry);
            app->add_option("--scheme", s.scheme, "single, rbf, cbf, cbf-analog");
            app->add_option("--channel", s.channel, "awgn or rayleigh");
            app->add_option("--snr", s.snr, "Eb/N0 list in dB: start:step:stop or a,b,c");
            app->add_option("--bits", s.bits, "Bits per SNR point (even)");
            app->add_option("--block-len", s.block_len, "Symbols per TFB / fading block")->check(CLI::PositiveNumber);
            app->add_option("--codebook", s.codebook, "Complementary pair for cbf schemes (default: Golay construction)");
            app->add_flag("--no-early-stop", s.no_early_stop, "Always simulate the full bit count");
            app->add_option("--threads", s.threads, "Worker threads (0 = hardware)");
            app->add_flag("--svg", s.svg, "Also write a semilog BER plot");
        }
    }

    int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
    {
        CLI::App app{"cbf: complementary beam pairs for omni-directional broadcast"};
        app.require_subcommand(1);
        app.fallthrough();
        app.set_config("--config", "", "TOML/INI file supplying any flag (command-line flags win)");
        app.set_version_flag("--version", kToolVersion);

        Globals g;
        app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
        app.add_option("--out-dir", g.out_dir, "Output directory")->capture_default_str();
        app.add_option("--grid-points", g.grid_points, "Azimuth samples of the evaluation grid")->capture_default_str();

        SearchOptions so;
        auto *search = app.add_subcommand("search", "Search a complementary weight-vector set");
        add_geometry(search, so.geometry);
        search->add_option("--k", so.k, "Phase alphabet size K")->check(CLI::Range(2, 1 << 16));
        search->add_option("--mode", so.mode, "exhaustive, randomized or golay")
            ->check(CLI::IsMember({"exhaustive", "randomized", "golay"}));
        search->add_option("--budget", so.budget, "Candidate sets for --mode randomized");
        search->add_option("--set-size", so.set_size, "2, or 3 for an odd hybrid grouping")->check(CLI::Range(2, 3));
        search->add_option("--output", so.output, "Codebook file name inside --out-dir");

        PatternOptions po;
        auto *pattern = app.add_subcommand("pattern", "Export beam patterns as CSV (and SVG)");
        add_geometry(pattern, po.geometry);
        add_vectors(pattern, po.vectors);
        pattern->add_option("--phi-points", po.phi_points, "Elevation samples for planar arrays");
        pattern->add_flag("--svg", po.svg, "Also write a polar plot");

        PatternOptions vo;
        auto *variance = app.add_subcommand("variance", "Report pattern variances and PA efficiency");
        add_geometry(variance, vo.geometry);
        add_vectors(variance, vo.vectors);
        variance->add_option("--phi-points", vo.phi_points, "Elevation samples for planar arrays");

        SimulateOptions sim;
        auto *simulate = app.add_subcommand("simulate", "Monte Carlo BER for one scheme");
        add_sim(simulate, sim);
        simulate->add_option("--angle", sim.angle, "Receiver azimuth in degrees");

        SimulateOptions sw;
        auto *sweep = app.add_subcommand("sweep-angles", "Monte Carlo BER at several receiver angles");
        add_sim(sweep, sw);
        sweep->add_option("--angles", sw.angles, "Azimuths in degrees: a,b,c or start:step:stop");

        std::string manifest, replay_out;
        auto *rep = app.add_subcommand("replay", "Re-run a command from its manifest");
        rep->add_option("manifest", manifest, "Manifest JSON written by a previous run")->required();

        try
        {
            app.parse(argc, argv);
        }
        catch (const CLI::ParseError &e)
        {
            return app.exit(e, out, err);
        }

        try
        {
            if (search->parsed())
                return cmd_search(so, g, out);
            if (pattern->parsed())
                return cmd_pattern(po, g, out);
            if (variance->parsed())
                return cmd_variance(vo, g, out);
            if (simulate->parsed())
                return cmd_simulate(sim, g, out);
            if (sweep->parsed())
                return cmd_sweep(sw, g, out);
            if (rep->parsed())
                return replay(manifest, app.get_option("--out-dir")->count() ? g.out_dir : "", out);
        }
        catch (const BudgetExceeded &e)
        {
            err << "error: " << e.what() << '\n';
            return 3;
        }
        catch (const UsageError &e)
        {
            err << "error: " << e.what() << "\n" << app.help();
            return 2;
        }
        catch (const std::exception &e)
        {
            err << "error: " << e.what() << '\n';
            return 1;
        }
        return 1;
    }
}
