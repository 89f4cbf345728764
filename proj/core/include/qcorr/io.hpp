#pragma once

// CSV and JSON serialization. CSV cells are printed with %.12g, so a
// write -> read -> write cycle reproduces the file byte for byte. JSON
// records use one object per line (JSONL) for sweeps and perturbation
// scans; undefined numeric entries serialize as null.

#include <array>
#include <string>
#include <vector>

#include "qcorr/analysis.hpp"
#include "qcorr/channels.hpp"
#include "qcorr/optimize.hpp"

namespace qcorr {

std::string format_g12(double x);  // %.12g ("inf", "-inf", "nan" for specials)

// plain number, "inf", or a fraction like "1/3"
double parse_number(const std::string& s);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

// minimal CSV: no quoting, cells must not contain commas or newlines
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);
CsvTable read_csv(const std::string& path);

void write_fig1_csv(const std::string& path, const std::vector<Fig1Row>& rows);
void write_fig2_csv(const std::string& path, const std::vector<Fig2Row>& rows);
void write_fig3_csv(const std::string& path, const std::vector<Fig3Row>& rows);
void write_sweep_csv(const std::string& path, const std::vector<SweepCell>& cells);
void write_suite_csv(const std::string& path, const std::vector<SuiteReport>& reports);

// {"basis": "computational" | "bell", "amplitudes": [[re, im], ...]};
// bell-basis amplitudes are coefficients over the four bell states
std::string state_to_json(const PureState4& psi);
PureState4 state_from_json(const std::string& text);
void write_state_json(const std::string& path, const PureState4& psi);
PureState4 read_state_json(const std::string& path);

// {"mu": .., "lambda": .., "beta_unitary": [[[re, im], [re, im]], ...]};
// a missing beta_unitary means the bell0 frame
std::string channel_to_json(const ChannelParams& cp);
ChannelParams channel_from_json(const std::string& text);

std::string sweep_cell_to_json(const SweepCell& cell);
std::string perturbation_to_json(const PerturbationReport& rep);
std::string suite_to_json(const SuiteReport& rep);

// only the cells whose violation flag is set, one record per line
void write_violations_jsonl(const std::string& path,
                            const std::vector<SweepCell>& cells);
void write_perturbation_jsonl(const std::string& path,
                              const std::vector<PerturbationReport>& reps);

}  // namespace qcorr
