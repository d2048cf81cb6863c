// SPDX-License-Identifier: Apache-2.0
//
// robust-dfrc: worst-case radar beamforming for dual-function radar-communication
// Copyright (C) 2026 The robust-dfrc contributors
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

#include "dfrc/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

using nlohmann::json;

namespace dfrc
{
    void SolverOptions::validate() const
    {
        auto positive = [](double v, const char *name)
        {
            if (!std::isfinite(v) || v <= 0.0)
                throw ConfigError(std::string("solver option must be positive: ") + name, std::string("solver.") + name);
        };
        positive(kkt_tol, "kkt_tol");
        positive(double(max_iter), "max_iter");
        positive(penalty_eta, "penalty_eta");
        // the clutter-plus-noise amplitude is at least the radar noise floor, so this keeps the
        // rate program bounded
        if (!(penalty_eta > 1.0))
            throw ConfigError("penalty_eta must exceed 1 (rate program is unbounded otherwise)", "solver.penalty_eta");
        positive(penalty_nu, "penalty_nu");
        positive(double(inner_S), "inner_S");
        positive(double(outer_d_max), "outer_d_max");
        positive(epsilon, "epsilon");
        positive(dinkelbach_tol, "dinkelbach_tol");
    }

    void ScenarioConfig::validate() const
    {
        geometry.validate();
        if (!std::isfinite(carrier_ghz) || carrier_ghz <= 0.0)
            throw ConfigError("carrier frequency must be positive", "carrier_ghz");
        if (!std::isfinite(bandwidth_hz) || bandwidth_hz <= 0.0)
            throw ConfigError("bandwidth must be positive", "bandwidth_hz");
        if (!std::isfinite(noise_dbm))
            throw ConfigError("noise power must be finite", "noise_dbm");
        if (!std::isfinite(radar_noise_power) || radar_noise_power < 0.0)
            throw ConfigError("radar noise power must be non-negative", "radar_noise_power");
        if (!std::isfinite(p_max_dbm))
            throw ConfigError("power budget must be finite", "p_max_dbm");
        if (users.empty())
            throw ConfigError("at least one user is required", "users");
        for (const auto &u : users)
        {
            if (!std::isfinite(u.distance_m) || u.distance_m <= 0.0)
                throw ConfigError("user distance must be positive", "distance_m");
            if (!std::isfinite(u.sinr_threshold_db))
                throw ConfigError("SINR threshold must be finite", "sinr_threshold_db");
        }
        if (target_angles.empty())
            throw ConfigError("at least one candidate target angle is required", "target_angles");
        for (const auto &a : target_angles)
            if (!angle_in_range(a.rad))
                throw ConfigError("target angle outside [-pi/2, pi/2]", "target_angles");
        if (target_gain.size() != 1 && target_gain.size() != target_angles.size())
            throw ConfigError("target_gain needs one shared value or one per candidate", "target_gain");
        for (double g : target_gain)
            if (!std::isfinite(g) || g < 0.0)
                throw ConfigError("target gain must be non-negative", "target_gain");
        for (const auto &c : clutters)
        {
            if (!angle_in_range(c.angle.rad))
                throw ConfigError("clutter angle outside [-pi/2, pi/2]", "clutters");
            if (!std::isfinite(c.gain) || c.gain < 0.0)
                throw ConfigError("clutter gain must be non-negative", "clutters");
            for (const auto &a : target_angles)
                if (std::abs(a.rad - c.angle.rad) <= 1e-9)
                    throw ConfigError("target and clutter angles must be distinct", "clutters");
        }
        solver.validate();
    }

    bool ScenarioConfig::operator==(const ScenarioConfig &o) const
    {
        auto same_angles = [](const std::vector<Angle> &a, const std::vector<Angle> &b)
        {
            if (a.size() != b.size())
                return false;
            for (size_t i = 0; i < a.size(); ++i)
                if (a[i].rad != b[i].rad)
                    return false;
            return true;
        };
        if (geometry.n_tx != o.geometry.n_tx || geometry.n_rx != o.geometry.n_rx || geometry.spacing != o.geometry.spacing)
            return false;
        if (carrier_ghz != o.carrier_ghz || bandwidth_hz != o.bandwidth_hz || noise_dbm != o.noise_dbm ||
            radar_noise_power != o.radar_noise_power || p_max_dbm != o.p_max_dbm || seed != o.seed ||
            stacked_noise != o.stacked_noise)
            return false;
        if (users.size() != o.users.size() || clutters.size() != o.clutters.size())
            return false;
        for (size_t k = 0; k < users.size(); ++k)
            if (users[k].distance_m != o.users[k].distance_m || users[k].sinr_threshold_db != o.users[k].sinr_threshold_db)
                return false;
        for (size_t j = 0; j < clutters.size(); ++j)
            if (clutters[j].angle.rad != o.clutters[j].angle.rad || clutters[j].gain != o.clutters[j].gain)
                return false;
        const auto &s = solver, &t = o.solver;
        return same_angles(target_angles, o.target_angles) && target_gain == o.target_gain &&
               s.kkt_tol == t.kkt_tol && s.max_iter == t.max_iter && s.penalty_eta == t.penalty_eta &&
               s.penalty_nu == t.penalty_nu && s.inner_S == t.inner_S && s.outer_d_max == t.outer_d_max &&
               s.epsilon == t.epsilon && s.dinkelbach_tol == t.dinkelbach_tol;
    }

    ScenarioConfig default_scenario()
    {
        ScenarioConfig c;
        c.geometry = {8, 8, 0.5};
        c.users = {{10.0, 10.0}, {15.0, 10.0}, {20.0, 10.0}, {25.0, 10.0}};
        c.target_angles = {Angle{pi / 4.0}, Angle{pi / 6.0}};
        c.target_gain = {std::pow(10.0, -3.0)}; // amplitude 10^-1.5
        c.clutters = {{Angle{0.0}, 1e-3}, {Angle{pi / 2.0}, 1e-5}};
        return c;
    }

    // ----- JSON -------------------------------------------------------------

    namespace
    {
        int line_of_offset(const std::string &text, size_t offset)
        {
            offset = std::min(offset, text.size());
            return 1 + int(std::count(text.begin(), text.begin() + std::ptrdiff_t(offset), '\n'));
        }

        // Line of the first occurrence of a key, 0 if absent
        int line_of_key(const std::string &text, const std::string &key)
        {
            auto pos = text.find("\"" + key + "\"");
            return pos == std::string::npos ? 0 : line_of_offset(text, pos);
        }

        struct Reader
        {
            const std::string &text;

            [[noreturn]] void fail(const std::string &field, const std::string &msg) const
            {
                auto leaf = field.substr(field.find_last_of('.') + 1);
                int line = line_of_key(text, leaf);
                std::string where = line > 0 ? " (line " + std::to_string(line) + ")" : "";
                throw ConfigError("config field '" + field + "'" + where + ": " + msg, field, line);
            }

            const json &need(const json &obj, const std::string &key, const std::string &path) const
            {
                if (!obj.is_object() || !obj.contains(key))
                    fail(path, "missing required field");
                return obj.at(key);
            }

            double number(const json &v, const std::string &path) const
            {
                if (!v.is_number())
                    fail(path, "expected a number");
                return v.get<double>();
            }

            int integer(const json &v, const std::string &path) const
            {
                if (!v.is_number_integer())
                    fail(path, "expected an integer");
                return v.get<int>();
            }

            double opt_number(const json &obj, const std::string &key, const std::string &path, double fallback) const
            {
                return obj.contains(key) ? number(obj.at(key), path) : fallback;
            }

            Angle angle(const json &v, const std::string &path) const
            {
                double a = number(v, path);
                if (!angle_in_range(a))
                    fail(path, "angle outside [-pi/2, pi/2]");
                return Angle{a};
            }
        };
    }

    ScenarioConfig parse_config(const std::string &text)
    {
        json j;
        try
        {
            j = json::parse(text);
        }
        catch (const json::parse_error &e)
        {
            int line = line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0);
            throw ConfigError("malformed JSON at line " + std::to_string(line) + ": " + e.what(), "", line);
        }
        Reader r{text};
        if (!j.is_object())
            r.fail("(root)", "expected an object");

        ScenarioConfig c;
        const auto &g = r.need(j, "geometry", "geometry");
        c.geometry.n_tx = r.integer(r.need(g, "n_tx", "geometry.n_tx"), "geometry.n_tx");
        c.geometry.n_rx = r.integer(r.need(g, "n_rx", "geometry.n_rx"), "geometry.n_rx");
        c.geometry.spacing = r.opt_number(g, "spacing", "geometry.spacing", 0.5);

        c.carrier_ghz = r.number(r.need(j, "carrier_ghz", "carrier_ghz"), "carrier_ghz");
        c.bandwidth_hz = r.opt_number(j, "bandwidth_hz", "bandwidth_hz", c.bandwidth_hz);
        c.noise_dbm = r.number(r.need(j, "noise_dbm", "noise_dbm"), "noise_dbm");
        c.radar_noise_power = r.opt_number(j, "radar_noise_power", "radar_noise_power", 0.0);
        c.p_max_dbm = r.number(r.need(j, "p_max_dbm", "p_max_dbm"), "p_max_dbm");

        const auto &users = r.need(j, "users", "users");
        if (!users.is_array())
            r.fail("users", "expected an array");
        for (size_t k = 0; k < users.size(); ++k)
        {
            auto base = "users[" + std::to_string(k) + "].";
            UserSpec u;
            u.distance_m = r.number(r.need(users[k], "distance_m", base + "distance_m"), base + "distance_m");
            u.sinr_threshold_db = r.number(r.need(users[k], "sinr_threshold_db", base + "sinr_threshold_db"), base + "sinr_threshold_db");
            c.users.push_back(u);
        }

        const auto &ta = r.need(j, "target_angles", "target_angles");
        if (!ta.is_array())
            r.fail("target_angles", "expected an array");
        for (size_t i = 0; i < ta.size(); ++i)
            c.target_angles.push_back(r.angle(ta[i], "target_angles"));

        const auto &tg = r.need(j, "target_gain", "target_gain");
        if (tg.is_array())
            for (const auto &v : tg)
                c.target_gain.push_back(r.number(v, "target_gain"));
        else
            c.target_gain.push_back(r.number(tg, "target_gain"));

        if (j.contains("clutters"))
        {
            const auto &cl = j.at("clutters");
            if (!cl.is_array())
                r.fail("clutters", "expected an array");
            for (size_t q = 0; q < cl.size(); ++q)
            {
                auto base = "clutters[" + std::to_string(q) + "].";
                ClutterSpec s;
                s.angle = r.angle(r.need(cl[q], "angle", base + "angle"), base + "angle");
                s.gain = r.number(r.need(cl[q], "gain", base + "gain"), base + "gain");
                c.clutters.push_back(s);
            }
        }

        if (j.contains("seed"))
        {
            const auto &s = j.at("seed");
            if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0))
                r.fail("seed", "expected an unsigned integer");
            c.seed = s.get<std::uint64_t>();
        }

        if (j.contains("stacked_noise"))
        {
            const auto &s = j.at("stacked_noise");
            if (!s.is_string())
                r.fail("stacked_noise", "expected a string");
            auto v = s.get<std::string>();
            if (v == "radar_noise")
                c.stacked_noise = StackedNoise::radar_noise;
            else if (v == "rx_elements")
                c.stacked_noise = StackedNoise::rx_elements;
            else
                r.fail("stacked_noise", "expected \"radar_noise\" or \"rx_elements\"");
        }

        if (j.contains("solver"))
        {
            const auto &s = j.at("solver");
            auto &o = c.solver;
            o.kkt_tol = r.opt_number(s, "kkt_tol", "solver.kkt_tol", o.kkt_tol);
            if (s.contains("max_iter"))
                o.max_iter = r.integer(s.at("max_iter"), "solver.max_iter");
            o.penalty_eta = r.opt_number(s, "penalty_eta", "solver.penalty_eta", o.penalty_eta);
            o.penalty_nu = r.opt_number(s, "penalty_nu", "solver.penalty_nu", o.penalty_nu);
            if (s.contains("inner_S"))
                o.inner_S = r.integer(s.at("inner_S"), "solver.inner_S");
            if (s.contains("outer_d_max"))
                o.outer_d_max = r.integer(s.at("outer_d_max"), "solver.outer_d_max");
            o.epsilon = r.opt_number(s, "epsilon", "solver.epsilon", o.epsilon);
            o.dinkelbach_tol = r.opt_number(s, "dinkelbach_tol", "solver.dinkelbach_tol", o.dinkelbach_tol);
        }

        try
        {
            c.validate();
        }
        catch (ConfigError &e)
        {
            if (e.line == 0 && !e.field.empty())
                e.line = line_of_key(text, e.field.substr(e.field.find_last_of('.') + 1));
            throw;
        }
        return c;
    }

    std::string dump_config(const ScenarioConfig &c)
    {
        json j;
        j["geometry"] = {{"n_tx", c.geometry.n_tx}, {"n_rx", c.geometry.n_rx}, {"spacing", c.geometry.spacing}};
        j["carrier_ghz"] = c.carrier_ghz;
        j["bandwidth_hz"] = c.bandwidth_hz;
        j["noise_dbm"] = c.noise_dbm;
        j["radar_noise_power"] = c.radar_noise_power;
        j["p_max_dbm"] = c.p_max_dbm;
        j["users"] = json::array();
        for (const auto &u : c.users)
            j["users"].push_back({{"distance_m", u.distance_m}, {"sinr_threshold_db", u.sinr_threshold_db}});
        j["target_angles"] = json::array();
        for (const auto &a : c.target_angles)
            j["target_angles"].push_back(a.rad);
        if (c.target_gain.size() == 1)
            j["target_gain"] = c.target_gain[0];
        else
            j["target_gain"] = c.target_gain;
        j["clutters"] = json::array();
        for (const auto &q : c.clutters)
            j["clutters"].push_back({{"angle", q.angle.rad}, {"gain", q.gain}});
        j["seed"] = c.seed;
        j["stacked_noise"] = c.stacked_noise == StackedNoise::radar_noise ? "radar_noise" : "rx_elements";
        const auto &o = c.solver;
        j["solver"] = {{"kkt_tol", o.kkt_tol}, {"max_iter", o.max_iter}, {"penalty_eta", o.penalty_eta},
                       {"penalty_nu", o.penalty_nu}, {"inner_S", o.inner_S}, {"outer_d_max", o.outer_d_max},
                       {"epsilon", o.epsilon}, {"dinkelbach_tol", o.dinkelbach_tol}};
        return j.dump(2) + "\n";
    }

    ScenarioConfig load_config(const std::string &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw ConfigError("cannot open config file: " + path, "path");
        std::stringstream ss;
        ss << in.rdbuf();
        return parse_config(ss.str());
    }

    void save_config(const ScenarioConfig &config, const std::string &path)
    {
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw ConfigError("cannot write config file: " + path, "path");
        out << dump_config(config);
    }

    std::uint64_t config_hash(const ScenarioConfig &config)
    {
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (unsigned char ch : dump_config(config))
        {
            h ^= ch;
            h *= 0x100000001b3ull;
        }
        return h;
    }

    // ----- Channels ---------------------------------------------------------

    GaussianSource::GaussianSource(std::uint64_t seed) : engine_(seed) {}

    double GaussianSource::uniform()
    {
        // 53 random bits, shifted away from zero so that log() stays finite
        return (double(engine_() >> 11) + 1.0) * 0x1.0p-53;
    }

    double GaussianSource::normal()
    {
        if (has_spare_)
        {
            has_spare_ = false;
            return spare_;
        }
        double r = std::sqrt(-2.0 * std::log(uniform()));
        double phi = 2.0 * pi * uniform();
        spare_ = r * std::sin(phi);
        has_spare_ = true;
        return r * std::cos(phi);
    }

    cplx GaussianSource::complex_normal()
    {
        const double s = std::sqrt(0.5);
        double re = normal();
        double im = normal();
        return {s * re, s * im};
    }

    double umi_pathloss_db(double distance_m, double carrier_ghz)
    {
        if (!(distance_m > 0.0))
            throw ConfigError("user distance must be positive", "distance_m");
        return 32.4 + 21.0 * std::log10(distance_m) + 20.0 * std::log10(carrier_ghz);
    }

    ChannelSet generate_channels(const ScenarioConfig &config)
    {
        return generate_channels(config, config.seed);
    }

    ChannelSet generate_channels(const ScenarioConfig &config, std::uint64_t seed)
    {
        ChannelSet ch;
        ch.seed = seed;
        GaussianSource rng(seed);
        for (const auto &user : config.users)
        {
            double pl = umi_pathloss_db(user.distance_m, config.carrier_ghz);
            double amp = std::sqrt(db_to_linear(-pl));
            cvec h(config.geometry.n_tx);
            for (int n = 0; n < h.size(); ++n)
                h[n] = amp * rng.complex_normal();
            ch.h.push_back(h);
            ch.pathloss_db.push_back(pl);
        }
        return ch;
    }
}
