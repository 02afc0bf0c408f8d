#include "olct/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace olct {

namespace {

using nlohmann::json;

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) throw InvalidSpec("malformed JSON");
    return j;
}

double finite_number(const json& j, const char* what) {
    if (!j.is_number()) throw InvalidSpec(std::string(what) + " must be a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw InvalidSpec(std::string(what) + " must be finite");
    return v;
}

const json& field(const json& j, const char* name) {
    const auto it = j.find(name);
    if (it == j.end()) throw InvalidSpec(std::string("missing field: ") + name);
    return *it;
}

json complex_arrays(const std::vector<Complex>& values, const char* what) {
    json re = json::array();
    json im = json::array();
    for (const auto& z : values) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw InvalidSpec(std::string(what) + " contains a non-finite sample");
        re.push_back(z.real());
        im.push_back(z.imag());
    }
    return json{{"re", std::move(re)}, {"im", std::move(im)}};
}

std::vector<Complex> parse_complex_arrays(const json& j) {
    const json& re = field(j, "re");
    const json& im = field(j, "im");
    if (!re.is_array() || !im.is_array() || re.size() != im.size())
        throw InvalidSpec("re/im must be arrays of equal length");
    std::vector<Complex> out(re.size());
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = Complex(finite_number(re[k], "re"), finite_number(im[k], "im"));
    return out;
}

json grid_to_json(const Grid& g) {
    return json{{"start", g.start}, {"step", g.step}, {"count", g.count}};
}

Grid grid_from_json(const json& j) {
    Grid g;
    g.start = finite_number(field(j, "start"), "grid start");
    g.step = finite_number(field(j, "step"), "grid step");
    const json& count = field(j, "count");
    if (!count.is_number_unsigned()) throw InvalidSpec("grid count must be a nonnegative integer");
    g.count = count.get<std::size_t>();
    g.validate();
    return g;
}

}  // namespace

std::string signal_to_json(const SampledSignal& f) {
    json j = complex_arrays(f.samples, "signal");
    j["origin"] = f.origin;
    j["step"] = f.step;
    return j.dump();
}

SampledSignal signal_from_json(const std::string& text) {
    const json j = parse(text);
    SampledSignal f;
    const json& origin = field(j, "origin");
    if (!origin.is_number_integer()) throw InvalidSpec("origin must be an integer");
    f.origin = origin.get<std::int64_t>();
    f.step = finite_number(field(j, "step"), "step");
    if (!(f.step > 0.0)) throw InvalidSpec("step must be positive");
    f.samples = parse_complex_arrays(j);
    return f;
}

std::string spectrum_to_json(const Spectrum& s) {
    json j = complex_arrays(s.values, "spectrum");
    j["grid"] = grid_to_json(s.grid);
    return j.dump();
}

Spectrum spectrum_from_json(const std::string& text) {
    const json j = parse(text);
    Spectrum s;
    s.grid = grid_from_json(field(j, "grid"));
    s.values = parse_complex_arrays(j);
    if (s.values.size() != s.grid.count)
        throw InvalidSpec("spectrum length does not match grid count");
    return s;
}

std::string map_to_json(const TimeFrequencyMap& m) {
    json j = complex_arrays(m.values, "map");
    j["shift_grid"] = grid_to_json(m.shift_grid);
    j["freq_grid"] = grid_to_json(m.freq_grid);
    j["window_id"] = m.window_id;
    return j.dump();
}

TimeFrequencyMap map_from_json(const std::string& text) {
    const json j = parse(text);
    TimeFrequencyMap m;
    m.shift_grid = grid_from_json(field(j, "shift_grid"));
    m.freq_grid = grid_from_json(field(j, "freq_grid"));
    const json& id = field(j, "window_id");
    if (!id.is_string()) throw InvalidSpec("window_id must be a string");
    m.window_id = id.get<std::string>();
    m.values = parse_complex_arrays(j);
    if (m.values.size() != m.shift_grid.count * m.freq_grid.count)
        throw InvalidSpec("map size does not match shift_grid x freq_grid");
    return m;
}

std::string report_to_json(const RecoveryReport& r) {
    json j;
    if (!std::isfinite(r.residual)) throw InvalidSpec("report residual must be finite");
    j["residual"] = r.residual;
    if (!r.verdict.empty()) j["verdict"] = r.verdict;
    json diag = json::object();
    for (const auto& [name, value] : r.diagnostics) {
        if (!std::isfinite(value))
            throw InvalidSpec("diagnostic " + name + " must be finite");
        diag[name] = value;
    }
    j["diagnostics"] = std::move(diag);
    j["signal"] = json::parse(signal_to_json(r.signal));
    return j.dump();
}

RecoveryReport report_from_json(const std::string& text) {
    const json j = parse(text);
    RecoveryReport r;
    r.residual = finite_number(field(j, "residual"), "residual");
    if (const auto it = j.find("verdict"); it != j.end()) {
        if (!it->is_string()) throw InvalidSpec("verdict must be a string");
        r.verdict = it->get<std::string>();
    }
    const json& diag = field(j, "diagnostics");
    if (!diag.is_object()) throw InvalidSpec("diagnostics must be an object");
    for (const auto& [name, value] : diag.items())
        r.diagnostics[name] = finite_number(value, "diagnostic");
    r.signal = signal_from_json(field(j, "signal").dump());
    return r;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidSpec("cannot read file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidSpec("cannot write file: " + path);
    out << text;
    if (!out.flush()) throw InvalidSpec("write failed: " + path);
}

}  // namespace olct
