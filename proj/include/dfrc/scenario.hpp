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

#ifndef DFRC_SCENARIO_H
#define DFRC_SCENARIO_H

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dfrc/array_model.hpp"
#include "dfrc/types.hpp"

namespace dfrc
{
    // Numerical knobs of the optimizer. The two penalty weights are dimensionless: see
    // transmit_opt.hpp for how they are scaled before use.
    struct SolverOptions
    {
        double kkt_tol = 1e-8;        // interior-point residual and gap tolerance
        int max_iter = 200;           // interior-point iteration cap
        double penalty_eta = 1.05;    // alignment penalty weight, per unit of radar noise
        double penalty_nu = 1.0;      // power-slack weight, relative to the surrogate shift
        int inner_S = 5;              // surrogate solves per outer iteration
        int outer_d_max = 30;         // outer iteration cap
        double epsilon = 1e-4;        // relative change of the penalized objective that ends the run
        double dinkelbach_tol = 1e-8; // relative tolerance of the receive-side fractional program

        void validate() const;
    };

    struct UserSpec
    {
        double distance_m = 10.0;
        double sinr_threshold_db = 10.0;
    };

    struct ClutterSpec
    {
        Angle angle;
        double gain = 0.0; // |alpha|^2, linear
    };

    // How the white part of the stacked clutter-plus-noise form is scaled
    enum class StackedNoise
    {
        radar_noise, // sigma_r / P_max, reproduces the radar denominator when ||u||^2 = P_max
        rx_elements  // n_rx / P_max, kept for auditing the alternative reading
    };

    struct ScenarioConfig
    {
        ArrayGeometry geometry;
        double carrier_ghz = 30.0;
        double bandwidth_hz = 1e8;
        double noise_dbm = -94.0;
        double radar_noise_power = 0.0; // linear watts; 0 means "same thermal floor as the users"
        double p_max_dbm = 30.0;
        std::vector<UserSpec> users;
        std::vector<Angle> target_angles;
        std::vector<double> target_gain; // one entry shared by all candidates, or one per candidate
        std::vector<ClutterSpec> clutters;
        std::uint64_t seed = 0;
        StackedNoise stacked_noise = StackedNoise::radar_noise;
        SolverOptions solver;

        int n_users() const { return int(users.size()); }
        int n_targets() const { return int(target_angles.size()); }
        int n_clutters() const { return int(clutters.size()); }

        double p_max() const { return dbm_to_watts(p_max_dbm); }
        double noise_power() const { return dbm_to_watts(noise_dbm); }
        double sigma_r() const { return radar_noise_power > 0.0 ? radar_noise_power : noise_power(); }
        double target_gain_of(int i) const { return target_gain.size() == 1 ? target_gain[0] : target_gain.at(i); }
        double sinr_threshold(int k) const { return db_to_linear(users.at(k).sinr_threshold_db); }

        void validate() const; // throws ConfigError

        bool operator==(const ScenarioConfig &o) const;
    };

    // Reference parameters: 8x8 ULA at 30 GHz, four users at 10..25 m with 10 dB targets,
    // candidate directions 45 and 30 degrees, two clutter patches.
    ScenarioConfig default_scenario();

    ScenarioConfig parse_config(const std::string &json_text);
    std::string dump_config(const ScenarioConfig &config);
    ScenarioConfig load_config(const std::string &path);
    void save_config(const ScenarioConfig &config, const std::string &path);

    // Stable 64-bit FNV-1a hash of the canonical JSON form
    std::uint64_t config_hash(const ScenarioConfig &config);

    struct ChannelSet
    {
        std::vector<cvec> h;
        std::vector<double> pathloss_db;
        std::uint64_t seed = 0;
    };

    // Line-of-sight urban micro pathloss in dB
    double umi_pathloss_db(double distance_m, double carrier_ghz);

    // Rayleigh channels scaled by the pathloss, drawn from config.seed
    ChannelSet generate_channels(const ScenarioConfig &config);
    ChannelSet generate_channels(const ScenarioConfig &config, std::uint64_t seed);

    // Seed of Monte-Carlo trial t derived from a base seed
    inline std::uint64_t trial_seed(std::uint64_t base, std::uint64_t trial) { return base ^ trial; }

    // Portable Gaussian source. std::normal_distribution differs between standard libraries,
    // so the transform is spelled out here to keep artifacts identical across platforms.
    class GaussianSource
    {
    public:
        explicit GaussianSource(std::uint64_t seed);
        double uniform();   // (0, 1]
        double normal();    // N(0, 1)
        cplx complex_normal(); // CN(0, 1)

    private:
        std::mt19937_64 engine_; // output sequence is fixed by the standard
        bool has_spare_ = false;
        double spare_ = 0.0;
    };
}

#endif
