#include "mpb/config.hpp"
#include "mpb/report.hpp"

#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace mpb;

namespace {

std::string small_run_config(unsigned workers) {
    return R"({
  "params": {"g": 5, "eta": 0.4, "omega_c": 3, "phi_z": 0.5, "n_max": 3},
  "sweep": {"variable": "delta_p", "start": -8, "stop": 8, "points": 9},
  "series": [{"omega_c": 0}, {"omega_c": 3}],
  "workers": )" + std::to_string(workers) + "}";
}

std::string csv_of(const RunResult& r) {
    std::ostringstream os;
    write_csv(r, os);
    return os.str();
}

} // namespace

TEST_CASE("config loading") {
    SUBCASE("preset only") {
        const auto c = load_config(R"({"preset": "fig3"})");
        CHECK(c.params.eta == 0.2);
        CHECK(c.params.g == 20.0);
        CHECK(c.params.gamma_m == 1.0);
        CHECK(c.params.gamma_e == 0.01);
        CHECK(c.params.phi_z == 0.0);
        REQUIRE(c.series.size() == 2);
        CHECK(*c.series[0].omega_c == 0.0);
        CHECK(*c.series[1].omega_c == 20.0);
        CHECK(c.sweep.variable == SweepVariable::delta_p);
        CHECK(c.sweep.points == 801);
        CHECK(c.sweep.start == -60.0);
        CHECK(c.sweep.stop == 60.0);
        CHECK(c.series_params()[0].n_max == 6);
    }
    SUBCASE("fig5b preset") {
        const auto c = load_config(R"({"preset": "fig5b"})");
        CHECK(c.params.eta == 2.0);
        CHECK(c.params.phi_z == std::numbers::pi);
        CHECK(c.params.omega_c == 20.0);
        CHECK(c.series_params()[0].n_max == 10);
        const auto a = load_config(R"({"preset": "fig5a"})");
        CHECK(a.series_params()[0].n_max == 12);
        const auto b = load_config(R"({"preset": "fig5a", "params": {"n_max": 9}})");
        CHECK(b.series_params()[0].n_max == 9);
    }
    SUBCASE("explicit fields override the preset") {
        const auto c = load_config(R"({"preset": "fig4a", "params": {"eta": 0.3}, "sweep": {"points": 11}})");
        CHECK(c.params.eta == 0.3);
        CHECK(c.series_params()[0].n_max == 6);
        CHECK(c.sweep.points == 11);
        CHECK(c.params.g == 20.0);
        const auto d = load_config(R"({"preset": "fig4a", "params": {"n_max": 5}})");
        CHECK(d.series_params()[0].n_max == 5);
    }
    SUBCASE("validation errors") {
        CHECK_THROWS_AS(load_config(R"({"sweep": {"points": 0}})"), ValidationError);
        CHECK_THROWS_AS(load_config(R"({"sweep": {"start": 5, "stop": 1}})"), ValidationError);
        CHECK_THROWS_AS(load_config(R"({"params": {"kappa": 2}})"), ValidationError);
        CHECK_THROWS_AS(load_config(R"({"params": {"eta": -1}})"), ValidationError);
        CHECK_THROWS_AS(load_config(R"({"preset": "fig9"})"), ValidationError);
        CHECK_THROWS_AS(load_config(R"({"output": {"format": "xml"}})"), ValidationError);
        CHECK_THROWS_AS(load_config(R"({"series": []})"), ValidationError);
    }
    SUBCASE("parse errors name the field or line") {
        try {
            load_config(R"({"params": {"g": 20, "colour": 1}})");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.field() == "params.colour");
        }
        try {
            load_config("{\n  \"params\": {\n    \"g\": 20,\n  }\n}");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 4);
        }
        CHECK_THROWS_AS(load_config(R"({"params": {"g": "twenty"}})"), ParseError);
        CHECK_THROWS_AS(load_config(R"({"sweep": {"points": 2.5}})"), ParseError);
        CHECK_THROWS_AS(load_config("[1, 2]"), ParseError);
    }
    SUBCASE("grid") {
        SweepSpec s{SweepVariable::delta_p, -60.0, 60.0, 801};
        const auto g = s.grid();
        CHECK(g.front() == -60.0);
        CHECK(g.back() == 60.0);
        CHECK(g[400] == 0.0);
        CHECK(g[1] - g[0] == doctest::Approx(0.15));
        CHECK(SweepSpec{SweepVariable::delta_p, 3.0, 3.0, 1}.grid() == std::vector<double>{3.0});
    }
    SUBCASE("worker count from the environment") {
        ::setenv("MPB_WORKERS", "3", 1);
        CHECK(workers_from_env() == 3u);
        ::setenv("MPB_WORKERS", "zero", 1);
        CHECK_FALSE(workers_from_env());
        ::unsetenv("MPB_WORKERS");
        CHECK_FALSE(workers_from_env());
    }
}

TEST_CASE("run output") {
    SUBCASE("identical output for any worker count") {
        const auto a = execute(load_config(small_run_config(1)));
        const auto b = execute(load_config(small_run_config(3)));
        const auto csv = csv_of(a);
        CHECK(csv == csv_of(b));
        std::istringstream in(csv);
        std::string line;
        std::getline(in, line);
        CHECK(line == "sweep_var,mean_n,g2,g3,top_fock_pop,flags,series");
        std::size_t rows = 0;
        while (std::getline(in, line)) ++rows;
        CHECK(rows == 18);
        CHECK(a.series[0].label == "omega_c=0");
        CHECK(a.series[1].rows[4].sweep_value == 0.0);
    }
    SUBCASE("json mirrors the csv") {
        const auto r = execute(load_config(small_run_config(1)));
        std::ostringstream os;
        write_json(r, os);
        const auto j = nlohmann::json::parse(os.str());
        REQUIRE(j["series"].size() == 2);
        const auto& row = j["series"][1]["rows"][2];
        CHECK(format_number(row["mean_n"].get<double>()) == format_number(r.series[1].rows[2].obs.mean_n));
        CHECK(j["series"][1]["params"]["omega_c"] == 3.0);
    }
    SUBCASE("flags") {
        auto cfg = load_config(R"({"params": {"eta": 0, "n_max": 2}, "sweep": {"start": 0, "stop": 1, "points": 2}})");
        const auto r = execute(cfg);
        CHECK(r.series[0].rows[0].flags == std::vector<std::string>{"undefined_correlation"});
        const auto csv = csv_of(r);
        CHECK(csv.find(",nan,nan,") != std::string::npos);
        auto strong = load_config(R"({"params": {"eta": 3, "g": 1, "n_max": 1}, "sweep": {"points": 1, "start": 0, "stop": 0}})");
        const auto s = execute(strong);
        CHECK(s.series[0].rows[0].flags.back() == "truncation_warning");
    }
    SUBCASE("sweep over the control field") {
        auto cfg = load_config(
            R"({"params": {"g": 5, "eta": 0.3, "delta_p": 7, "n_max": 2}, "sweep": {"variable": "omega_c", "start": 0, "stop": 4, "points": 3}})");
        const auto r = execute(cfg);
        REQUIRE(r.series[0].rows.size() == 3);
        CHECK(r.series[0].rows[2].sweep_value == 4.0);
        CHECK(r.series[0].rows[0].obs.mean_n != r.series[0].rows[2].obs.mean_n);
    }
    SUBCASE("energy-difference presets") {
        auto cfg = preset_config("fig6a");
        CHECK(cfg.kind == RunKind::energy_differences);
        CHECK(cfg.sweep.variable == SweepVariable::omega_c);
        CHECK(cfg.sweep.start == 0.0);
        CHECK(cfg.sweep.stop == 35.0);
        const auto r = execute(cfg);
        CHECK(r.energy.size() == cfg.sweep.points);
        CHECK(r.energy.front().d.dE2ph_plus == doctest::Approx((std::sqrt(6.0) - 2 * std::sqrt(2.0)) * 20));
        const auto csv = csv_of(r);
        CHECK(csv.rfind("omega_c,dE2ph_plus,dE2ph_minus\n", 0) == 0);
        const auto b = csv_of(execute(preset_config("fig6b")));
        CHECK(b.rfind("omega_c,dE3ph_plus,dE3ph_minus,dE3ph_prime_plus,dE3ph_prime_minus\n", 0) == 0);
    }
    SUBCASE("output errors") {
        auto cfg = load_config(R"({"params": {"n_max": 1}, "sweep": {"points": 1, "start": 0, "stop": 0}})");
        const auto r = execute(cfg);
        CHECK_THROWS_AS(write_output(r, {"", OutputFormat::csv}), IoError);
        CHECK_THROWS_AS(write_output(r, {"/nonexistent-dir/x.csv", OutputFormat::csv}), IoError);
        const auto path = std::filesystem::temp_directory_path() / "mpb_test_output.json";
        write_output(r, {path.string(), OutputFormat::json});
        std::ifstream in(path);
        CHECK(nlohmann::json::parse(in)["kind"] == "spectrum");
        std::filesystem::remove(path);
    }
    SUBCASE("number formatting") {
        CHECK(format_number(0.1) == "0.1");
        CHECK(format_number(1.0 / 3.0) == "0.3333333333");
        CHECK(format_number(-0.0) == "0");
        CHECK(format_number(NAN) == "nan");
        CHECK(format_number(1.234567890123e-21) == "1.23456789e-21");
    }
}

TEST_CASE("dressed report") {
    SUBCASE("in-phase two-photon resonance") {
        const auto r = dressed_report(20.0, 0.0, RadiationCase::in_phase);
        bool found = false;
        for (const auto& x : r.two_photon)
            if (x.allowed && std::abs(x.delta_p - std::sqrt(6.0) * 10.0) < 1e-9) found = true;
        CHECK(found);
        CHECK(r.peak_splitting == doctest::Approx(40 * std::sqrt(2.0)));
    }
    SUBCASE("out-of-phase resonances with control field") {
        const auto r = dressed_report(20.0, 20.0, RadiationCase::out_phase);
        const double alpha = 4800.0;
        const double beta = 25 * std::pow(20.0, 4) + 6 * 400.0 * 400.0 + 9 * std::pow(20.0, 4);
        std::vector<double> expect = {std::sqrt(alpha - std::sqrt(beta)) / (2 * std::sqrt(2.0)),
                                      std::sqrt(alpha + std::sqrt(beta)) / (2 * std::sqrt(2.0))};
        for (double e : expect) {
            for (double sgn : {-1.0, 1.0}) {
                bool found = false;
                for (const auto& x : r.two_photon)
                    if (x.allowed && std::abs(x.delta_p - sgn * e) < 1e-9) found = true;
                CHECK(found);
            }
        }
        // the bright one-photon peaks at ±sqrt(2g²+Ω²) are forbidden out of phase
        for (const auto& x : r.one_photon)
            if (std::abs(std::abs(x.delta_p) - std::sqrt(1200.0)) < 1e-9) CHECK_FALSE(x.allowed);
    }
    SUBCASE("decoupled cavity") {
        const auto r = dressed_report(0.0, 10.0, RadiationCase::in_phase);
        for (const auto& x : r.one_photon) CHECK(std::abs(std::abs(x.delta_p) - 10.0) < 1e-9);
        for (const auto& x : r.two_photon) {
            const double a = std::abs(x.delta_p);
            CHECK((std::abs(a - 5.0) < 1e-9 || std::abs(a - 10.0) < 1e-9 || std::abs(a - 5.0 * std::sqrt(2.0)) < 1e-9));
        }
    }
    SUBCASE("text and json output") {
        const auto r = dressed_report(20.0, 20.0, RadiationCase::out_phase);
        std::ostringstream t, j;
        write_text(r, t);
        write_json(r, j);
        CHECK(t.str().find("30.26925447") != std::string::npos);
        const auto doc = nlohmann::json::parse(j.str());
        CHECK(doc["manifolds"].size() == 3);
        CHECK(doc["case"] == "out_phase");
    }
    SUBCASE("arguments") {
        CHECK_THROWS_AS(dressed_report(-1.0, 0.0, RadiationCase::in_phase), std::invalid_argument);
    }
}
