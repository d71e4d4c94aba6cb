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

#include "qest/serialize.hpp"

#include <charconv>
#include <map>
#include <sstream>
#include <system_error>

#include <nlohmann/json.hpp>

#include "qest/errors.hpp"

namespace qest {

using nlohmann::json;

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

json matrix_to_json(const CMatrix &a) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < a.cols(); ++j) row.push_back({a(i, j).real(), a(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

CMatrix matrix_from_json(const json &rows, int dim) {
    if (!rows.is_array() || static_cast<int>(rows.size()) != dim) {
        throw Error(ErrorKind::DimMismatch, "operator must have dim rows");
    }
    CMatrix a(dim, dim);
    for (int i = 0; i < dim; ++i) {
        if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != dim) {
            throw Error(ErrorKind::DimMismatch, "operator row must have dim entries");
        }
        for (int j = 0; j < dim; ++j) {
            const json &z = rows[i][j];
            a(i, j) = Complex(z.at(0).get<double>(), z.at(1).get<double>());
        }
    }
    return a;
}

double parse_double(const std::string &s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw Error(ErrorKind::InvalidArgument, "cannot parse number '" + s + "'");
    }
    return v;
}

}  // namespace

std::string povm_to_json(const Povm &m, int indent) {
    json j;
    j["dim"] = m.dim();
    json elements = json::array();
    for (const auto &e : m.elements()) {
        elements.push_back({{"label", e.label}, {"op", matrix_to_json(e.op)}});
    }
    j["elements"] = std::move(elements);
    if (m.provenance()) {
        json prov = json::array();
        for (const auto &p : *m.provenance()) {
            prov.push_back({{"branch", p.branch}, {"probability", p.probability}});
        }
        j["provenance"] = std::move(prov);
    }
    return j.dump(indent);
}

Povm povm_from_json(const std::string &text) {
    try {
        const json j = json::parse(text);
        const int dim = j.at("dim").get<int>();
        std::vector<PovmElement> elements;
        for (const auto &e : j.at("elements")) {
            elements.push_back({e.at("label").get<std::string>(), matrix_from_json(e.at("op"), dim)});
        }
        std::optional<std::vector<Provenance>> provenance;
        if (j.contains("provenance")) {
            provenance.emplace();
            for (const auto &p : j.at("provenance")) {
                provenance->push_back({p.at("branch").get<int>(), p.at("probability").get<double>()});
            }
        }
        return Povm(std::move(elements), std::move(provenance));
    } catch (const json::exception &e) {
        throw Error(ErrorKind::InvalidArgument, std::string("malformed POVM JSON: ") + e.what());
    }
}

std::string mub_family_to_json(const MubFamily &f, int indent) {
    json j;
    j["q"] = f.dim();
    json bases = json::array();
    for (const auto &b : f.bases()) {
        json vectors = json::array();
        for (Eigen::Index c = 0; c < b.cols(); ++c) {
            json v = json::array();
            for (Eigen::Index r = 0; r < b.rows(); ++r) v.push_back({b(r, c).real(), b(r, c).imag()});
            vectors.push_back(std::move(v));
        }
        bases.push_back(std::move(vectors));
    }
    j["bases"] = std::move(bases);
    const double ortho = f.orthonormality_defect();
    const double overlap = f.unbiasedness_defect();
    j["check"] = {{"orthonormality_defect", ortho},
                  {"overlap_defect", overlap},
                  {"expected_overlap", 1.0 / f.dim()},
                  {"pass", ortho <= 1e-10 && overlap <= 1e-9}};
    return j.dump(indent);
}

std::string mc_summary_to_csv(std::span<const McSummary> summaries) {
    std::string out = kMcCsvHeader;
    out += '\n';
    for (const auto &s : summaries) {
        const std::string name = to_string(s.estimator);
        for (std::size_t k = 0; k < s.checkpoints.size(); ++k) {
            out += std::to_string(s.checkpoints[k]);
            for (const std::string &field :
                 {name, format_double(s.mean_bures[k]), format_double(s.se_bures[k]),
                  format_double(s.mean_sq[k]), format_double(s.se_sq[k]), format_double(s.c_opt),
                  format_double(s.c_tomo)}) {
                out += ',';
                out += field;
            }
            out += '\n';
        }
    }
    return out;
}

std::string mc_summary_to_json(std::span<const McSummary> summaries, int indent) {
    json arr = json::array();
    for (const auto &s : summaries) {
        arr.push_back({{"estimator", to_string(s.estimator)},
                       {"reps", s.reps},
                       {"cOpt", s.c_opt},
                       {"cTomo", s.c_tomo},
                       {"optFailures", s.opt_failures},
                       {"steps", s.steps},
                       {"m", s.checkpoints},
                       {"meanBures", s.mean_bures},
                       {"seBures", s.se_bures},
                       {"meanSq", s.mean_sq},
                       {"seSq", s.se_sq}});
    }
    return arr.dump(indent);
}

std::vector<McSummary> mc_summary_from_csv(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kMcCsvHeader) {
        throw Error(ErrorKind::InvalidArgument, "unexpected CSV header");
    }
    std::vector<McSummary> out;
    std::map<std::string, std::size_t> index;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream row(line);
        for (std::string cell; std::getline(row, cell, ',');) cells.push_back(cell);
        if (cells.size() != 8) throw Error(ErrorKind::InvalidArgument, "CSV row needs 8 columns");
        auto [it, inserted] = index.try_emplace(cells[1], out.size());
        if (inserted) {
            McSummary s;
            if (cells[1] == "tomography") {
                s.estimator = EstimatorKind::Tomography;
            } else if (cells[1] == "adaptive") {
                s.estimator = EstimatorKind::Adaptive;
            } else {
                throw Error(ErrorKind::InvalidArgument, "unknown estimator '" + cells[1] + "'");
            }
            out.push_back(std::move(s));
        }
        McSummary &s = out[it->second];
        s.checkpoints.push_back(static_cast<int>(parse_double(cells[0])));
        s.mean_bures.push_back(parse_double(cells[2]));
        s.se_bures.push_back(parse_double(cells[3]));
        s.mean_sq.push_back(parse_double(cells[4]));
        s.se_sq.push_back(parse_double(cells[5]));
        s.c_opt = parse_double(cells[6]);
        s.c_tomo = parse_double(cells[7]);
    }
    return out;
}

}  // namespace qest
