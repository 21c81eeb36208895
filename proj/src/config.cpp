// SPDX-License-Identifier: Apache-2.0
//
// ucmvdr - unit circle MVDR adaptive beamforming for uniform linear arrays
// Copyright (C) 2026 The ucmvdr authors
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

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ucmvdr/errors.hpp"
#include "ucmvdr/experiment.hpp"

namespace ucmvdr {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == ','))
            ++i;
        const std::size_t start = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != ',')
            ++i;
        if (i > start)
            out.push_back(s.substr(start, i - start));
    }
    return out;
}

class Parser {
public:
    explicit Parser(std::string source) : source_(std::move(source)) {}

    [[noreturn]] void fail(const std::string &msg) const
    {
        throw ConfigError(source_ + ":" + std::to_string(line_) + ": " + msg);
    }

    void set_line(int line) { line_ = line; }

    double real(std::string_view text) const
    {
        // Rational literals such as 3/11 are accepted.
        if (const auto slash = text.find('/'); slash != std::string_view::npos) {
            const double num = real(trim(text.substr(0, slash)));
            const double den = real(trim(text.substr(slash + 1)));
            if (den == 0.0)
                fail("division by zero in '" + std::string(text) + "'");
            return num / den;
        }
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc{} || ptr != text.data() + text.size())
            fail("expected a number, got '" + std::string(text) + "'");
        return value;
    }

    template <typename Int>
    Int integer(std::string_view text) const
    {
        Int value{};
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc{} || ptr != text.data() + text.size())
            fail("expected an integer, got '" + std::string(text) + "'");
        return value;
    }

    bool boolean(std::string_view text) const
    {
        if (text == "true" || text == "yes" || text == "1")
            return true;
        if (text == "false" || text == "no" || text == "0")
            return false;
        fail("expected true/false, got '" + std::string(text) + "'");
    }

private:
    std::string source_;
    int line_ = 0;
};

} // namespace

bool ExperimentConfig::has_method(Method m) const
{
    return std::find(methods.begin(), methods.end(), m) != methods.end();
}

void ExperimentConfig::validate() const
{
    try {
        ula.validate();
        scene.validate();
    } catch (const DomainError &e) {
        throw ConfigError(e.what());
    }
    if (n_snapshots < 1)
        throw ConfigError("snapshots must be at least 1");
    if (n_trials < 1)
        throw ConfigError("trials must be at least 1");
    if (methods.empty())
        throw ConfigError("no methods selected");
    if (scene.sources.empty())
        throw ConfigError("scene needs at least one source (the interferer)");
    if (interferer_index >= scene.sources.size())
        throw ConfigError("interferer index out of range");
    if (has_method(Method::DL) && !dl_policy)
        throw ConfigError("DL requested but no dl policy set");
    if (dl_policy) {
        if (const auto *fixed = std::get_if<FixedDl>(&*dl_policy); fixed && !(fixed->delta >= 0.0))
            throw ConfigError("fixed loading factor must be non-negative");
        if (const auto *match = std::get_if<MatchMeanWng>(&*dl_policy); match && match->pilot_trials < 100)
            throw ConfigError("match_mean_wng needs at least 100 pilot trials");
    }
    if (has_method(Method::UC) && ula.spacing_wavelengths != 0.5)
        throw ConfigError("UC requires spacing 0.5");
    if (exemplar_trial < 0)
        throw ConfigError("exemplar_trial must be non-negative");
    if (beampattern_points < 2)
        throw ConfigError("beampattern_points must be at least 2");
    if (wng_hist_bins < 1)
        throw ConfigError("wng_hist_bins must be at least 1");
}

ExperimentConfig reference_scenario_config()
{
    ExperimentConfig cfg;
    cfg.ula = UlaConfig{11, 0.5, 0.0, false};
    cfg.scene.noise_power = 1.0;
    cfg.scene.sources = {SourceSpec{3.0 / 11.0, 1e4}};
    cfg.n_snapshots = 12;
    cfg.n_trials = 5000;
    cfg.seed = 20240601;
    cfg.dl_policy = MatchMeanWng{1000};
    cfg.output_dir = "out/single_interferer";
    return cfg;
}

ExperimentConfig parse_config(std::istream &in, const std::string &source_name)
{
    ExperimentConfig cfg = reference_scenario_config();
    Parser p(source_name);
    std::string section;
    bool sources_reset = false;
    std::string raw;
    int line_no = 0;

    while (std::getline(in, raw)) {
        p.set_line(++line_no);
        std::string_view line = raw;
        if (const auto hash = line.find_first_of("#;"); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                p.fail("unterminated section header");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            if (section != "array" && section != "scene" && section != "experiment" && section != "output")
                p.fail("unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            p.fail("expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        if (value.empty())
            p.fail("missing value for '" + key + "'");
        if (section.empty())
            p.fail("key '" + key + "' outside of a section");

        if (section == "array") {
            if (key == "sensors")
                cfg.ula.n_sensors = p.integer<int>(value);
            else if (key == "spacing")
                cfg.ula.spacing_wavelengths = p.real(value);
            else if (key == "look_u")
                cfg.ula.look_direction_u = p.real(value);
            else if (key == "allow_grating_lobes")
                cfg.ula.allow_grating_lobes = p.boolean(value);
            else
                p.fail("unknown key '" + key + "' in [array]");
        } else if (section == "scene") {
            if (key == "noise_power") {
                cfg.scene.noise_power = p.real(value);
            } else if (key == "source") {
                const auto parts = split_ws(value);
                if (parts.size() != 2)
                    p.fail("source expects '<direction_u> <power>'");
                if (!sources_reset) {
                    cfg.scene.sources.clear();
                    sources_reset = true;
                }
                cfg.scene.sources.push_back({p.real(parts[0]), p.real(parts[1])});
            } else if (key == "interferer") {
                cfg.interferer_index = p.integer<std::size_t>(value);
            } else {
                p.fail("unknown key '" + key + "' in [scene]");
            }
        } else if (section == "experiment") {
            if (key == "snapshots") {
                cfg.n_snapshots = p.integer<int>(value);
            } else if (key == "trials") {
                cfg.n_trials = p.integer<int>(value);
            } else if (key == "seed") {
                cfg.seed = p.integer<std::uint64_t>(value);
            } else if (key == "threads") {
                cfg.threads = p.integer<int>(value);
            } else if (key == "output_dir") {
                cfg.output_dir = std::string(value);
            } else if (key == "methods") {
                cfg.methods.clear();
                for (auto name : split_ws(value)) {
                    try {
                        const Method m = parse_method(name);
                        if (!cfg.has_method(m))
                            cfg.methods.push_back(m);
                    } catch (const DomainError &e) {
                        p.fail(e.what());
                    }
                }
            } else if (key == "dl") {
                const auto parts = split_ws(value);
                if (parts[0] == "none" && parts.size() == 1)
                    cfg.dl_policy.reset();
                else if (parts[0] == "fixed" && parts.size() == 2)
                    cfg.dl_policy = FixedDl{p.real(parts[1])};
                else if (parts[0] == "match_mean_wng" && parts.size() <= 2)
                    cfg.dl_policy = MatchMeanWng{parts.size() == 2 ? p.integer<int>(parts[1]) : 1000};
                else
                    p.fail("dl expects 'none', 'fixed <delta>' or 'match_mean_wng [pilots]'");
            } else {
                p.fail("unknown key '" + key + "' in [experiment]");
            }
        } else if (section == "output") {
            if (key == "exemplar_trial")
                cfg.exemplar_trial = p.integer<int>(value);
            else if (key == "beampattern_points")
                cfg.beampattern_points = p.integer<int>(value);
            else if (key == "wng_hist_bins")
                cfg.wng_hist_bins = p.integer<int>(value);
            else
                p.fail("unknown key '" + key + "' in [output]");
        }
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file " + path.string());
    return parse_config(in, path.string());
}

} // namespace ucmvdr
