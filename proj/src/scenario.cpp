#include "mgame/scenario.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mgame {

std::string_view to_string(ModelKind model) {
    switch (model) {
        case ModelKind::example1: return "example1";
        case ModelKind::example2: return "example2";
        case ModelKind::example3: return "example3";
        case ModelKind::engagement_perfect: return "engagement_perfect";
        case ModelKind::engagement_imperfect: return "engagement_imperfect";
    }
    return "example2";
}

namespace {

enum class KeyType { real, integer, seed, wave_kind, mode, horizon };

struct KeySpec {
    KeyType type;
    unsigned models;  // bitmask over ModelKind
};

constexpr unsigned bit(ModelKind m) { return 1u << static_cast<unsigned>(m); }
constexpr unsigned kEx1 = bit(ModelKind::example1);
constexpr unsigned kEx2 = bit(ModelKind::example2);
constexpr unsigned kEx3 = bit(ModelKind::example3);
constexpr unsigned kEng = bit(ModelKind::engagement_perfect) | bit(ModelKind::engagement_imperfect);
constexpr unsigned kGames = kEx2 | kEx3;
constexpr unsigned kAll = kEx1 | kGames | kEng;

void add_waveform(std::map<std::string, KeySpec>& keys, const std::string& prefix, unsigned models) {
    keys[prefix + ".kind"] = {KeyType::wave_kind, models};
    keys[prefix + ".amp"] = {KeyType::real, models};
    keys[prefix + ".omega"] = {KeyType::real, models};
    keys[prefix + ".p"] = {KeyType::integer, models};
    keys[prefix + ".phase"] = {KeyType::real, models};
}

const std::map<std::string, KeySpec>& key_table() {
    static const std::map<std::string, KeySpec> table = [] {
        std::map<std::string, KeySpec> k;
        k["t1"] = {KeyType::real, kAll};
        k["dt"] = {KeyType::real, kAll};
        k["seed"] = {KeyType::seed, kAll};
        k["noise.epsilon"] = {KeyType::real, kAll};
        k["tau"] = {KeyType::real, kGames | kEng};
        k["law_horizon"] = {KeyType::horizon, kGames | kEng};

        k["x1_0"] = {KeyType::real, kEx1 | kGames};
        k["x2_0"] = {KeyType::real, kGames};
        for (const char* name : {"a", "b", "c", "sigma", "chi", "m", "n", "Omega", "k"})
            k[name] = {KeyType::real, kEx1};

        k["kappa"] = {KeyType::real, kEx2};
        k["kappa1"] = {KeyType::real, kEx3 | kEng};
        k["kappa2"] = {KeyType::real, kEx3 | kEng};
        k["rho1"] = {KeyType::real, kGames};
        k["rho2"] = {KeyType::real, kGames};
        k["opponent_mode"] = {KeyType::mode, kGames};
        add_waveform(k, "opponent", kGames);
        add_waveform(k, "beta", kEx3);

        for (const char* name : {"R_0", "Vr_0", "z_0", "w_0", "rho_Mr", "rho_Mn", "rho_Tr", "rho_Tn", "eps_reg",
                                 "R_stop"})
            k[name] = {KeyType::real, kEng};
        k["target_mode"] = {KeyType::mode, kEng};
        add_waveform(k, "target_r", kEng);
        add_waveform(k, "target_n", kEng);
        for (int i = 1; i <= 4; ++i) {
            add_waveform(k, "beta" + std::to_string(i), kEng);
            add_waveform(k, "beta_hat" + std::to_string(i), kEng);
        }
        return k;
    }();
    return table;
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

ScenarioError error_at(std::size_t line, const std::string& msg) {
    std::ostringstream os;
    if (line > 0) os << "line " << line << ": ";
    os << msg;
    return ScenarioError(line, os.str());
}

std::optional<double> parse_real(std::string_view text) {
    double v = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    if (begin != end && *begin == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v)) return std::nullopt;
    return v;
}

std::optional<ModelKind> parse_model(std::string_view text) {
    for (ModelKind m : {ModelKind::example1, ModelKind::example2, ModelKind::example3,
                        ModelKind::engagement_perfect, ModelKind::engagement_imperfect}) {
        if (text == to_string(m)) return m;
    }
    return std::nullopt;
}

ScenarioFile::Value parse_value(const std::string& key, KeyType type, std::string_view text, std::size_t line) {
    switch (type) {
        case KeyType::real: {
            auto v = parse_real(text);
            if (!v) throw error_at(line, "key '" + key + "': '" + std::string(text) + "' is not a finite number");
            return *v;
        }
        case KeyType::integer: {
            auto v = parse_real(text);
            if (!v || std::floor(*v) != *v)
                throw error_at(line, "key '" + key + "': '" + std::string(text) + "' is not an integer");
            return *v;
        }
        case KeyType::seed: {
            std::uint64_t v = 0;
            const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
            if (ec != std::errc() || ptr != text.data() + text.size())
                throw error_at(line, "key '" + key + "': '" + std::string(text) + "' is not an unsigned integer");
            return v;
        }
        case KeyType::wave_kind:
            try {
                wave_kind_from_string(text);
            } catch (const std::invalid_argument& e) {
                throw error_at(line, "key '" + key + "': " + e.what());
            }
            return std::string(text);
        case KeyType::mode:
            if (text != "waveform" && text != "feedback")
                throw error_at(line, "key '" + key + "': expected waveform or feedback");
            return std::string(text);
        case KeyType::horizon:
            if (text != "native" && text != "cutting" && text != "fixed")
                throw error_at(line, "key '" + key + "': expected native, cutting or fixed");
            return std::string(text);
    }
    return std::string(text);
}

// Range checks that depend on the value, shared by parse() and with().
void check_value(const std::string& key, double v, std::size_t line) {
    auto fail = [&](const std::string& what) { throw error_at(line, "key '" + key + "' " + what); };
    if ((key == "dt" || key == "tau" || key == "eps_reg") && !(v > 0.0)) fail("must be positive");
    if (key == "t1" && v < 0.0) fail("must be non-negative");
    if (key.rfind("rho", 0) == 0 && v < 0.0) fail("must be non-negative");
    if (key == "noise.epsilon" && v < 0.0) fail("must be non-negative");
    if (key.size() > 2 && key.substr(key.size() - 2) == ".p" && v < 1.0) fail("must be >= 1");
}

}  // namespace

ScenarioFile ScenarioFile::parse(std::string_view text) {
    ScenarioFile file;
    std::optional<ModelKind> model;
    struct Entry {
        std::string key;
        std::string value;
        std::size_t line;
    };
    std::vector<Entry> entries;
    std::set<std::string> seen;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw error_at(line_no, "expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) throw error_at(line_no, "missing key");
        if (value.empty()) throw error_at(line_no, "key '" + key + "' has no value");
        if (!seen.insert(key).second) throw error_at(line_no, "duplicate key '" + key + "'");

        if (key == "model") {
            model = parse_model(value);
            if (!model) throw error_at(line_no, "unknown model '" + value + "'");
            continue;
        }
        if (key_table().count(key) == 0) throw error_at(line_no, "unknown key '" + key + "'");
        entries.push_back({key, value, line_no});
    }

    if (!model) throw error_at(0, "missing required key 'model'");
    file.model_ = *model;

    for (const auto& e : entries) {
        const KeySpec spec = key_table().at(e.key);
        if ((spec.models & bit(*model)) == 0)
            throw error_at(e.line, "key '" + e.key + "' is not used by model " + std::string(to_string(*model)));
        Value v = parse_value(e.key, spec.type, e.value, e.line);
        if (const double* d = std::get_if<double>(&v)) check_value(e.key, *d, e.line);
        file.values_[e.key] = std::move(v);
    }

    for (const auto& key : required_keys(*model)) {
        if (!file.has(key))
            throw error_at(0, "missing required key '" + key + "' for model " + std::string(to_string(*model)));
    }
    return file;
}

ScenarioFile ScenarioFile::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ScenarioError(0, "cannot read scenario file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

std::vector<std::string> ScenarioFile::required_keys(ModelKind model) {
    switch (model) {
        case ModelKind::example1: return {"t1", "dt", "x1_0"};
        case ModelKind::example2: return {"t1", "dt", "x1_0", "x2_0", "kappa", "rho1"};
        case ModelKind::example3: return {"t1", "dt", "x1_0", "x2_0", "kappa1", "rho1", "rho2", "tau"};
        case ModelKind::engagement_perfect:
        case ModelKind::engagement_imperfect: return {"t1", "dt", "R_0", "Vr_0", "tau"};
    }
    return {};
}

double ScenarioFile::number(const std::string& key, double fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    if (const double* d = std::get_if<double>(&it->second)) return *d;
    throw std::logic_error("scenario key '" + key + "' is not numeric");
}

std::optional<std::string> ScenarioFile::word(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    if (const auto* s = std::get_if<std::string>(&it->second)) return *s;
    throw std::logic_error("scenario key '" + key + "' is not a word");
}

std::uint64_t ScenarioFile::seed() const {
    const auto it = values_.find("seed");
    if (it == values_.end()) return 0;
    return std::get<std::uint64_t>(it->second);
}

bool ScenarioFile::is_numeric_key(const std::string& key) const {
    const auto it = key_table().find(key);
    if (it == key_table().end()) return false;
    const KeySpec spec = it->second;
    return (spec.models & bit(model_)) != 0 && (spec.type == KeyType::real || spec.type == KeyType::integer);
}

ScenarioFile ScenarioFile::with(const std::string& key, double value) const {
    if (!is_numeric_key(key))
        throw ScenarioError(0, "key '" + key + "' is not a numeric key of model " + std::string(to_string(model_)));
    if (!std::isfinite(value)) throw ScenarioError(0, "key '" + key + "': value must be finite");
    if (key_table().at(key).type == KeyType::integer && std::floor(value) != value)
        throw ScenarioError(0, "key '" + key + "': value must be an integer");
    check_value(key, value, 0);
    ScenarioFile copy = *this;
    copy.values_[key] = value;
    return copy;
}

namespace {

Waveform read_waveform(const ScenarioFile& f, const std::string& prefix, const Waveform& fallback = {}) {
    Waveform w = fallback;
    if (auto kind = f.word(prefix + ".kind")) w.kind = wave_kind_from_string(*kind);
    w.amp = f.number(prefix + ".amp", w.amp);
    w.omega = f.number(prefix + ".omega", w.omega);
    w.p = static_cast<int>(f.number(prefix + ".p", w.p));
    w.phase = f.number(prefix + ".phase", w.phase);
    return w;
}

LawHorizon read_horizon(const ScenarioFile& f) {
    const auto h = f.word("law_horizon");
    if (!h || *h == "native") return LawHorizon::native;
    return *h == "cutting" ? LawHorizon::cutting : LawHorizon::fixed;
}

NoiseChannel read_noise(const ScenarioFile& f) { return {f.number("noise.epsilon", 0.0), f.seed()}; }

}  // namespace

GameModel to_game_model(ModelKind model) {
    switch (model) {
        case ModelKind::example1: return GameModel::example1;
        case ModelKind::example2: return GameModel::example2;
        case ModelKind::example3: return GameModel::example3;
        default: throw std::invalid_argument("not a game model: " + std::string(to_string(model)));
    }
}

GameScenario to_game_scenario(const ScenarioFile& f) {
    if (is_engagement(f.model())) throw std::invalid_argument("to_game_scenario: engagement scenario");
    GameScenario sc;
    sc.T = f.number("t1", sc.T);
    sc.dt = f.number("dt", sc.dt);
    sc.x0 = GameState(f.number("x1_0", 0.0), f.number("x2_0", 0.0));
    sc.noise = read_noise(f);
    sc.horizon = f.model() == ModelKind::example1 ? LawHorizon::native : read_horizon(f);

    Example1Params& e1 = sc.example1;
    e1.a = f.number("a", e1.a);
    e1.b = f.number("b", e1.b);
    e1.c = f.number("c", e1.c);
    e1.sigma = f.number("sigma", e1.sigma);
    e1.chi = f.number("chi", e1.chi);
    e1.m = f.number("m", e1.m);
    e1.n = f.number("n", e1.n);
    e1.Omega = f.number("Omega", e1.Omega);
    e1.k = f.number("k", e1.k);

    sc.kappa = f.number("kappa", sc.kappa);
    sc.kappa1 = f.number("kappa1", sc.kappa1);
    sc.kappa2 = f.number("kappa2", sc.kappa2);
    sc.rho1 = f.number("rho1", sc.rho1);
    sc.rho2 = f.number("rho2", sc.rho2);
    sc.tau = CuttingSpec{f.number("tau", sc.tau.tau)};
    sc.opponent = read_waveform(f, "opponent");
    sc.beta = read_waveform(f, "beta");
    // Example 3's second player is a feedback law unless told otherwise.
    const auto mode = f.word("opponent_mode");
    const bool feedback = mode ? *mode == "feedback" : f.model() == ModelKind::example3;
    sc.opponent_mode = feedback ? OpponentMode::feedback : OpponentMode::waveform;
    return sc;
}

EngagementParams to_engagement_params(const ScenarioFile& f) {
    if (!is_engagement(f.model())) throw std::invalid_argument("to_engagement_params: not an engagement scenario");
    EngagementParams p;
    p.t1 = f.number("t1", p.t1);
    p.dt = f.number("dt", p.dt);
    p.R0 = f.number("R_0", p.R0);
    p.Vr0 = f.number("Vr_0", p.Vr0);
    p.z0 = f.number("z_0", p.z0);
    p.w0 = f.number("w_0", p.w0);
    p.kappa1 = f.number("kappa1", p.kappa1);
    p.kappa2 = f.number("kappa2", p.kappa2);
    p.rho_Mr = f.number("rho_Mr", p.rho_Mr);
    p.rho_Mn = f.number("rho_Mn", p.rho_Mn);
    p.rho_Tr = f.number("rho_Tr", p.rho_Tr);
    p.rho_Tn = f.number("rho_Tn", p.rho_Tn);
    p.eps_reg = f.number("eps_reg", p.eps_reg);
    p.R_stop = f.number("R_stop", p.R_stop);
    p.tau = CuttingSpec{f.number("tau", p.tau.tau)};
    p.horizon = read_horizon(f);
    p.target_r = read_waveform(f, "target_r");
    p.target_n = read_waveform(f, "target_n");
    const auto mode = f.word("target_mode");
    p.target_mode = mode && *mode == "feedback" ? TargetMode::feedback : TargetMode::waveform;
    for (int i = 0; i < 4; ++i) {
        p.beta[i] = read_waveform(f, "beta" + std::to_string(i + 1));
        p.beta_hat[i] = read_waveform(f, "beta_hat" + std::to_string(i + 1));
    }
    p.noise = read_noise(f);
    return p;
}

}  // namespace mgame
