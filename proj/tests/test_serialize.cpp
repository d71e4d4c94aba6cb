// Copyright 2026 The qest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <clocale>
#include <cmath>
#include <sstream>

#include "qest/errors.hpp"
#include "qest/estimation.hpp"
#include "qest/measurement.hpp"
#include "qest/serialize.hpp"
#include "qest/simulator.hpp"
#include "qest/state_model.hpp"

using namespace qest;

TEST(FormatDouble, RoundTrips) {
    for (double v : {0.0, 1.0, -2.5, 1.0 / 3.0, 9.000000000000002, 1e-300, 6.02214076e23}) {
        EXPECT_EQ(std::stod(format_double(v)), v);
    }
    EXPECT_EQ(format_double(0.5), "0.5");
}

TEST(PovmJson, RoundTripWithProvenance) {
    const auto sol = optimal_measurement(qubit_slds(StokesPoint(Eigen::Vector3d(0.2, 0.4, -0.3))),
                                         qubit_qfi(StokesPoint(Eigen::Vector3d(0.2, 0.4, -0.3))),
                                         Weight(RMatrix::Identity(3, 3)));
    const Povm &m = *sol.measurement;
    const Povm back = povm_from_json(povm_to_json(m));
    ASSERT_EQ(back.size(), m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        EXPECT_EQ(back[i].label, m[i].label);
        EXPECT_EQ((back[i].op - m[i].op).norm(), 0.0);
    }
    ASSERT_TRUE(back.provenance().has_value());
    EXPECT_EQ(back.provenance()->size(), m.size());
}

TEST(PovmJson, RejectsInvalid) {
    EXPECT_THROW(povm_from_json("{\"dim\": 2, \"elements\": []}"), Error);
    EXPECT_THROW(povm_from_json("not json"), Error);
}

TEST(MubJson, ContainsCheckReport) {
    const std::string text = mub_family_to_json(mub_bases(3));
    EXPECT_NE(text.find("\"check\""), std::string::npos);
    EXPECT_NE(text.find("\"bases\""), std::string::npos);
}

TEST(McCsv, HeaderAndRoundTrip) {
    RunConfig cfg;
    cfg.m_max = 50;
    cfg.reps = 4;
    std::vector<McSummary> s{monte_carlo(cfg, EstimatorKind::Tomography, 1),
                             monte_carlo(cfg, EstimatorKind::Adaptive, 1)};
    const std::string csv = mc_summary_to_csv(s);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), kMcCsvHeader);
    const auto back = mc_summary_from_csv(csv);
    ASSERT_EQ(back.size(), 2u);
    for (std::size_t k = 0; k < 2; ++k) {
        EXPECT_EQ(back[k].estimator, s[k].estimator);
        EXPECT_EQ(back[k].checkpoints, s[k].checkpoints);
        for (std::size_t i = 0; i < s[k].checkpoints.size(); ++i) {
            EXPECT_EQ(back[k].mean_bures[i], s[k].mean_bures[i]);
            EXPECT_EQ(back[k].se_sq[i], s[k].se_sq[i]);
        }
        EXPECT_EQ(back[k].c_tomo, s[k].c_tomo);
    }
    EXPECT_EQ(mc_summary_to_csv(back), csv);
}

TEST(McCsv, IgnoresLocale) {
    RunConfig cfg;
    cfg.m_max = 10;
    cfg.reps = 2;
    std::vector<McSummary> s{monte_carlo(cfg, EstimatorKind::Tomography, 1)};
    const std::string before = mc_summary_to_csv(s);
    if (std::setlocale(LC_NUMERIC, "de_DE.UTF-8") != nullptr) {
        EXPECT_EQ(mc_summary_to_csv(s), before);
        std::setlocale(LC_NUMERIC, "C");
    }
    EXPECT_EQ(before.find(";"), std::string::npos);
}

TEST(McJson, HasSummaryFields) {
    RunConfig cfg;
    cfg.m_max = 10;
    cfg.reps = 2;
    std::vector<McSummary> s{monte_carlo(cfg, EstimatorKind::Tomography, 1)};
    const std::string text = mc_summary_to_json(s);
    for (const char *key : {"meanBures", "seBures", "meanSq", "cOpt", "cTomo", "estimator"}) {
        EXPECT_NE(text.find(key), std::string::npos) << key;
    }
}

TEST(McCsv, RejectsBadHeader) { EXPECT_THROW(mc_summary_from_csv("a,b\n1,2\n"), Error); }
