// harmex command-line tool.
//
// Every subcommand resolves its parameters as built-in defaults, then the file
// named by HARMEX_CONFIG, then --config, then explicit flags. The resolved set
// is written as JSON next to the outputs and can be fed back with --config.
// Failures print one JSON object {"error": <category>, "message": ...} on stderr.

#include <CLI11.hpp>
#include <json.hpp>

#include <harmex/harmex.hpp>

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace harmex;

namespace {

[[noreturn]] void config_error(const std::string& what) { detail::fail(ErrorCategory::Config, what); }

enum class Kind { Text, Number, Count, CountList, TextList };

struct Param {
  std::string name;
  Kind kind;
  json fallback;
  std::string help;
  bool required = false;
};

class Params {
 public:
  explicit Params(json values) : values_(std::move(values)) {}

  const json& raw() const { return values_; }
  std::string text(const std::string& k) const { return values_.at(k).get<std::string>(); }
  double number(const std::string& k) const { return values_.at(k).get<double>(); }
  std::size_t count(const std::string& k) const { return values_.at(k).get<std::size_t>(); }
  std::uint64_t seed(const std::string& k) const { return values_.at(k).get<std::uint64_t>(); }
  std::vector<std::size_t> counts(const std::string& k) const { return values_.at(k).get<std::vector<std::size_t>>(); }
  std::vector<std::string> texts(const std::string& k) const { return values_.at(k).get<std::vector<std::string>>(); }
  bool has(const std::string& k) const { return !text(k).empty(); }

 private:
  json values_;
};

struct Command {
  std::string name;
  std::string help;
  std::vector<Param> params;
  // Returns where the resolved config should be written, if anywhere.
  std::function<std::optional<fs::path>(const Params&)> run;
};

// ---------------------------------------------------------------------------
// Value conversion

json scalar_from_text(const Param& p, const std::string& s) {
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  switch (p.kind) {
    case Kind::Text:
    case Kind::TextList:
      return s;
    case Kind::Number: {
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(begin, end, v);
      if (ec != std::errc() || ptr != end || !std::isfinite(v)) config_error("--" + p.name + ": '" + s + "' is not a number");
      return v;
    }
    case Kind::Count:
    case Kind::CountList: {
      std::uint64_t v = 0;
      const auto [ptr, ec] = std::from_chars(begin, end, v);
      if (ec != std::errc() || ptr != end) config_error("--" + p.name + ": '" + s + "' is not a non-negative integer");
      return v;
    }
  }
  return nullptr;
}

bool kind_matches(Kind kind, const json& v) {
  switch (kind) {
    case Kind::Text: return v.is_string();
    case Kind::Number: return v.is_number() && std::isfinite(v.get<double>());
    case Kind::Count: return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
    case Kind::CountList:
      return v.is_array() && std::all_of(v.begin(), v.end(), [](const json& e) { return kind_matches(Kind::Count, e); });
    case Kind::TextList:
      return v.is_array() && std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_string(); });
  }
  return false;
}

// Reads the section of a config file that applies to `command`. Accepts either
// a resolved config ({"command": ..., "params": {...}}) or an object keyed by
// subcommand name.
json config_section(const fs::path& path, const std::string& command) {
  std::ifstream in(path);
  if (!in) detail::fail(ErrorCategory::Io, path.string() + ": cannot open config");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    detail::fail(ErrorCategory::Format, path.string() + ": " + e.what());
  }
  if (!j.is_object()) detail::fail(ErrorCategory::Format, path.string() + ": config must be a JSON object");
  if (j.contains("command")) {
    if (j["command"] != command)
      config_error(path.string() + ": config was written for '" + j["command"].dump() + "', not '" + command + "'");
    return j.value("params", json::object());
  }
  return j.value(command, json::object());
}

void merge_section(json& into, const json& section, const Command& cmd, const std::string& origin) {
  if (!section.is_object()) config_error(origin + ": section for '" + cmd.name + "' must be an object");
  for (const auto& [key, value] : section.items()) {
    const auto it = std::find_if(cmd.params.begin(), cmd.params.end(), [&](const Param& p) { return p.name == key; });
    if (it == cmd.params.end()) config_error(origin + ": unknown key '" + key + "' for '" + cmd.name + "'");
    if (!kind_matches(it->kind, value)) config_error(origin + ": key '" + key + "' has the wrong type");
    into[key] = value;
  }
}

// ---------------------------------------------------------------------------
// Shared helpers

io::WavSpec wav_spec(const Params& p) {
  const auto enc = p.text("encoding");
  if (enc == "float32") return {io::WavEncoding::Float32};
  if (enc == "pcm16") return {io::WavEncoding::Pcm16};
  config_error("encoding must be float32 or pcm16, got '" + enc + "'");
}

void write_audio(const fs::path& path, const AudioSignal& x, const io::WavSpec& spec = {}) {
  const auto report = io::write_wav(path, x, spec);
  if (report.clipped > 0)
    std::cerr << json{{"warning", "clipped"}, {"path", path.string()}, {"samples", report.clipped}}.dump() << '\n';
}

fs::path sidecar(const fs::path& output) { return fs::path(output.string() + ".config.json"); }

StftConfig stft_config(const Params& p) {
  StftConfig c;
  c.fft_size = p.count("fft-size");
  c.win_size = p.count("win-size");
  c.hop_size = p.count("hop-size");
  return c;
}

MelConfig mel_config(const Params& p) {
  MelConfig c;
  c.n_mels = p.count("n-mels");
  c.f_min = p.number("f-min");
  c.f_max = p.number("f-max");
  c.floor = p.number("mel-floor");
  return c;
}

std::vector<Param> mel_params() {
  return {
      {"sample-rate", Kind::Number, 16000.0, "Sample rate in Hz"},
      {"fft-size", Kind::Count, 1024, "STFT size"},
      {"win-size", Kind::Count, 640, "Analysis window length in samples"},
      {"hop-size", Kind::Count, 160, "Frame hop in samples"},
      {"n-mels", Kind::Count, 80, "Number of mel bands"},
      {"f-min", Kind::Number, 0.0, "Lowest mel edge in Hz"},
      {"f-max", Kind::Number, 8000.0, "Highest mel edge in Hz"},
      {"mel-floor", Kind::Number, 1e-5, "Power floor before the log"},
  };
}

std::vector<Param> with(std::vector<Param> a, const std::vector<Param>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

json metric_values(const AudioSignal& x, const AudioSignal& ref, const std::optional<F0Track>& f0,
                   const std::vector<std::string>& which, double search_cents, double threshold_db) {
  json out = json::object();
  for (const auto& m : which) {
    if (m == "mr-stft") {
      const auto l = mr_stft_loss(x, ref);
      out["mr_stft_sc"] = l.sc;
      out["mr_stft_mag"] = l.mag;
      out["mr_stft_total"] = l.total;
    } else if (m == "mel-mae") {
      out["mel_mae"] = mel_mae(mel_spectrogram(x), mel_spectrogram(ref));
    } else if (m == "pitch-jitter" || m == "uv") {
      if (!f0) config_error("metric '" + m + "' needs --f0");
      if (m == "uv") {
        out["uv_error_rate"] = uv_error_rate(x, *f0, UvConfig{threshold_db});
      } else {
        const auto j = pitch_jitter(x, *f0, PitchJitterConfig{search_cents, 0.5});
        out["pitch_jitter_cents"] = j.cents;
        out["pitch_jitter_skipped_frames"] = j.frames_skipped;
      }
    } else {
      config_error("unknown metric '" + m + "' (expected mr-stft, mel-mae, pitch-jitter or uv)");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Subcommands

std::optional<fs::path> run_excite(const Params& p) {
  const double fs = p.number("sample-rate");
  const auto track = io::read_f0(p.text("f0"), p.number("hop"));
  const std::size_t hop = detail::hop_samples(track.hop_seconds, fs);
  const std::size_t n = p.count("n-samples") > 0 ? p.count("n-samples") : track.size() * hop;

  ExcitationConfig cfg;
  cfg.amplitude = p.number("amplitude");
  if (p.count("max-harmonics") > 0) cfg.k_max_cap = p.count("max-harmonics");
  const auto phase = p.text("phase");
  if (phase == "random") cfg.phase_init = SeededRandomPhase{p.seed("seed")};
  else if (phase != "zero") config_error("phase must be zero or random, got '" + phase + "'");

  write_audio(p.text("out"), sine_excitation(interpolate_f0(track, fs, n), cfg), wav_spec(p));
  return sidecar(p.text("out"));
}

std::optional<fs::path> run_filter(const Params& p) {
  const auto x = io::read_wav(p.text("input"));
  const auto h = io::read_coeffs(p.text("coeffs"));
  write_audio(p.text("out"), apply_ltv(x, h), wav_spec(p));
  return sidecar(p.text("out"));
}

std::optional<fs::path> run_estimate(const Params& p) {
  const auto tensor = io::read_features(p.text("mel"));
  const double fs = p.number("sample-rate");
  const auto stft = stft_config(p);
  const double expected_hop = static_cast<double>(stft.hop_size) / fs;
  if (std::abs(tensor.hop_seconds - expected_hop) > 1e-9 * expected_hop)
    config_error(p.text("mel") + ": file hop " + std::to_string(tensor.hop_seconds) + " s does not match hop-size " +
                 std::to_string(stft.hop_size) + " at " + std::to_string(fs) + " Hz");
  const auto mel = io::to_mel(tensor, stft, mel_config(p), fs);
  io::write_coeffs(p.text("out"), estimate_coeffs_from_mel(mel, EstimateConfig{p.count("n-taps"), p.number("floor-db")}));
  return sidecar(p.text("out"));
}

std::optional<fs::path> run_fit(const Params& p) {
  const auto x = io::read_wav(p.text("excitation"));
  const auto target = io::read_wav(p.text("target"));
  FitConfig cfg;
  cfg.n_taps = p.count("n-taps");
  cfg.ridge_lambda = p.number("ridge-lambda");
  cfg.frame_hop_seconds = p.number("hop");
  const auto mode = p.text("mode");
  if (mode == "joint") cfg.mode = FitMode::Joint;
  else if (mode == "per-frame") cfg.mode = FitMode::PerFrame;
  else config_error("mode must be joint or per-frame, got '" + mode + "'");
  io::write_coeffs(p.text("out"), fit_coeffs_least_squares(x, target, cfg));
  return sidecar(p.text("out"));
}

std::optional<fs::path> run_mel(const Params& p) {
  const auto x = io::read_wav(p.text("input"));
  if (x.sample_rate != p.number("sample-rate"))
    config_error(p.text("input") + ": sample rate " + std::to_string(x.sample_rate) + " differs from sample-rate");
  io::write_features(p.text("out"), io::to_tensor(mel_spectrogram(x, stft_config(p), mel_config(p))));
  return sidecar(p.text("out"));
}

std::optional<fs::path> run_loudness(const Params& p) {
  const auto x = io::read_wav(p.text("input"));
  const auto hop = detail::hop_samples(p.number("hop"), x.sample_rate);
  io::write_features(p.text("out"), io::to_tensor(loudness(x, hop, p.number("floor"))));
  return sidecar(p.text("out"));
}

std::optional<fs::path> run_metrics(const Params& p) {
  const auto x = io::read_wav(p.text("input"));
  const auto ref = io::read_wav(p.text("reference"));
  if (x.size() != ref.size())
    detail::fail(ErrorCategory::LengthMismatch, p.text("input") + " has " + std::to_string(x.size()) + " samples, " +
                                                    p.text("reference") + " has " + std::to_string(ref.size()));
  std::optional<F0Track> f0;
  if (p.has("f0")) f0 = io::read_f0(p.text("f0"), p.number("hop"));
  auto which = p.texts("metrics");
  if (which.empty()) {
    which = {"mr-stft", "mel-mae"};
    if (f0) which.insert(which.end(), {"pitch-jitter", "uv"});
  }
  const auto line = metric_values(x, ref, f0, which, p.number("search-cents"), p.number("energy-threshold-db")).dump();
  std::cout << line << '\n';
  if (!p.has("out")) return std::nullopt;
  std::ofstream out(p.text("out"), std::ios::trunc);
  if (!(out << line << '\n')) detail::fail(ErrorCategory::Io, p.text("out") + ": write failed");
  return sidecar(p.text("out"));
}

std::optional<fs::path> run_condition(const Params& p) {
  ChannelParts parts;
  for (const auto& spec : p.texts("channels")) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) config_error("channel '" + spec + "' must be name=path");
    const auto name = spec.substr(0, eq);
    std::optional<AudioSignal>* slot = name == "noise"                 ? &parts.noise
                                       : name == "raw_excitation"      ? &parts.raw_excitation
                                       : name == "filtered_excitation" ? &parts.filtered_excitation
                                                                       : nullptr;
    if (!slot) config_error("unknown channel '" + name + "' (expected noise, raw_excitation or filtered_excitation)");
    if (*slot) config_error("channel '" + name + "' given twice");
    *slot = io::read_wav(spec.substr(eq + 1));
  }
  const fs::path prefix = p.text("out-prefix");
  const auto bundle = stack_channels(parts);
  io::export_conditioning(bundle, prefix);
  const auto factors = p.counts("factors");
  io::export_conditioning(downsample_multiscale(bundle, factors), prefix);
  return fs::path(prefix.string() + ".config.json");
}

std::optional<fs::path> run_demo(const Params& p) {
  const fs::path dir = p.text("out-dir");
  fs::create_directories(dir);
  const double fs = 16000.0, hop_s = 0.010;
  const auto seed = p.seed("seed");

  const auto frames = static_cast<std::size_t>(std::llround(p.number("duration") / hop_s));
  if (frames < 30) config_error("duration must be at least 0.3 s");
  F0Track track{std::vector<double>(frames, 0.0), hop_s};
  const std::size_t edge = 10;
  for (std::size_t f = edge; f + edge < frames; ++f) {
    const double t = static_cast<double>(f - edge) / static_cast<double>(frames - 2 * edge - 1);
    track.values[f] = p.number("f0-start") + t * (p.number("f0-end") - p.number("f0-start"));
  }
  io::write_f0(dir / "f0.txt", track);

  const auto excitation = sine_excitation(interpolate_f0(track, fs, frames * 160));
  write_audio(dir / "excitation.wav", excitation);

  const auto formants = vowel_formants(p.text("vowel"));
  auto target = formant_filter(excitation, formants);
  const auto breath = gaussian_noise(target.size(), fs, seed);
  for (std::size_t i = 0; i < target.size(); ++i) target.samples[i] += p.number("noise-level") * breath.samples[i];
  write_audio(dir / "target.wav", target);

  const auto mel = mel_spectrogram(target);
  io::write_features(dir / "target_mel.hmx", io::to_tensor(mel));
  io::write_features(dir / "target_loudness.hmx", io::to_tensor(loudness(target, 160)));

  const auto estimated_h = estimate_coeffs_from_mel(mel, EstimateConfig{p.count("n-taps"), -50.0});
  io::write_coeffs(dir / "estimated.ltv", estimated_h);
  const auto estimated = apply_ltv(excitation, estimated_h);
  write_audio(dir / "estimated.wav", estimated);

  FitConfig fit;
  fit.n_taps = p.count("n-taps");
  const auto fitted_h = fit_coeffs_least_squares(excitation, target, fit);
  io::write_coeffs(dir / "fitted.ltv", fitted_h);
  const auto fitted = apply_ltv(excitation, fitted_h);
  write_audio(dir / "fitted.wav", fitted);

  const std::vector<std::string> all = {"mr-stft", "mel-mae", "pitch-jitter", "uv"};
  json report = {{"raw_excitation", metric_values(excitation, target, track, all, 200.0, -40.0)},
                 {"estimated", metric_values(estimated, target, track, all, 200.0, -40.0)},
                 {"fitted", metric_values(fitted, target, track, all, 200.0, -40.0)}};
  std::ofstream(dir / "metrics.json", std::ios::trunc) << report.dump() << '\n';

  const auto bundle = stack_channels(ChannelParts{gaussian_noise(target.size(), fs, seed + 1), excitation, fitted});
  io::export_conditioning(bundle, dir / "cond");
  io::export_conditioning(downsample_multiscale(bundle, p.counts("factors")), dir / "cond");
  return dir / "config.json";
}

std::vector<Command> commands() {
  const Param encoding{"encoding", Kind::Text, "float32", "WAV encoding: float32 or pcm16"};
  return {
      {"excite",
       "Synthesize a harmonic excitation WAV from an f0 text file",
       {{"f0", Kind::Text, "", "f0 file, one Hz value per frame (0 = unvoiced)", true},
        {"out", Kind::Text, "", "Output WAV", true},
        {"sample-rate", Kind::Number, 16000.0, "Sample rate in Hz"},
        {"hop", Kind::Number, 0.010, "f0 frame hop in seconds"},
        {"n-samples", Kind::Count, 0, "Output length; 0 means frames x hop"},
        {"amplitude", Kind::Number, 0.1, "Harmonic amplitude"},
        {"max-harmonics", Kind::Count, 0, "Cap on harmonics per sample; 0 means none"},
        {"phase", Kind::Text, "zero", "Phase at voiced onsets: zero or random"},
        {"seed", Kind::Count, 0, "Seed for random onset phases"},
        encoding},
       run_excite},
      {"filter",
       "Apply LTV FIR coefficients to a WAV",
       {{"input", Kind::Text, "", "Input WAV", true},
        {"coeffs", Kind::Text, "", "Coefficient file (LTVF)", true},
        {"out", Kind::Text, "", "Output WAV", true},
        encoding},
       run_filter},
      {"estimate",
       "Estimate minimum-phase coefficients from a log-mel feature file",
       with({{"mel", Kind::Text, "", "Log-mel feature file (HMX1)", true},
             {"out", Kind::Text, "", "Output coefficient file", true},
             {"n-taps", Kind::Count, 64, "Taps per frame"},
             {"floor-db", Kind::Number, -50.0, "Magnitude floor in dB"}},
            mel_params()),
       run_estimate},
      {"fit",
       "Least-squares fit of coefficients mapping an excitation onto a target",
       {{"excitation", Kind::Text, "", "Excitation WAV", true},
        {"target", Kind::Text, "", "Target WAV", true},
        {"out", Kind::Text, "", "Output coefficient file", true},
        {"n-taps", Kind::Count, 64, "Taps per frame"},
        {"hop", Kind::Number, 0.010, "Coefficient frame hop in seconds"},
        {"ridge-lambda", Kind::Number, 1e-6, "Ridge regularisation"},
        {"mode", Kind::Text, "joint", "joint or per-frame"}},
       run_fit},
      {"mel",
       "Log-mel spectrogram of a WAV",
       with({{"input", Kind::Text, "", "Input WAV", true}, {"out", Kind::Text, "", "Output feature file", true}},
            mel_params()),
       run_mel},
      {"loudness",
       "Frame log-RMS loudness of a WAV",
       {{"input", Kind::Text, "", "Input WAV", true},
        {"out", Kind::Text, "", "Output feature file", true},
        {"hop", Kind::Number, 0.010, "Frame hop in seconds"},
        {"floor", Kind::Number, 1e-5, "RMS floor before the log"}},
       run_loudness},
      {"metrics",
       "Compare a WAV against a reference; prints one JSON line",
       {{"input", Kind::Text, "", "Hypothesis WAV", true},
        {"reference", Kind::Text, "", "Reference WAV", true},
        {"f0", Kind::Text, "", "Reference f0 file (enables pitch-jitter and uv)"},
        {"hop", Kind::Number, 0.010, "f0 frame hop in seconds"},
        {"metrics", Kind::TextList, json::array(), "Subset of mr-stft, mel-mae, pitch-jitter, uv"},
        {"search-cents", Kind::Number, 200.0, "Pitch search range around the reference"},
        {"energy-threshold-db", Kind::Number, -40.0, "Voicing threshold relative to peak"},
        {"out", Kind::Text, "", "Also write the JSON line here"}},
       run_metrics},
      {"condition",
       "Stack conditioning channels and export the decimation pyramid",
       {{"channels", Kind::TextList, json::array(), "name=path for noise, raw_excitation, filtered_excitation", true},
        {"factors", Kind::CountList, json::array({8, 6, 5}), "Decimation factors, applied left to right"},
        {"out-prefix", Kind::Text, "", "Output prefix; files are <prefix>_x<factor>.hmx", true}},
       run_condition},
      {"demo",
       "Synthetic vowel walkthrough writing every artifact into a directory",
       {{"out-dir", Kind::Text, "", "Output directory", true},
        {"seed", Kind::Count, 1234, "Noise seed"},
        {"vowel", Kind::Text, "a", "Vowel: a, e, i, o or u"},
        {"duration", Kind::Number, 1.0, "Length in seconds"},
        {"f0-start", Kind::Number, 110.0, "Pitch at the start of the voiced part"},
        {"f0-end", Kind::Number, 140.0, "Pitch at the end of the voiced part"},
        {"noise-level", Kind::Number, 0.003, "Breath noise standard deviation"},
        {"n-taps", Kind::Count, 64, "Taps per frame"},
        {"factors", Kind::CountList, json::array({8, 6, 5}), "Conditioning decimation factors"}},
       run_demo},
  };
}

void report_error(std::string_view category, const std::string& message) {
  std::cerr << json{{"error", category}, {"message", message}}.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Harmonic excitation synthesis, LTV filtering and analysis"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "harmex 1.0.0");

  const auto cmds = commands();
  std::map<std::string, std::map<std::string, std::vector<std::string>>> flags;
  std::map<std::string, std::string> config_paths;
  std::map<std::string, CLI::App*> subs;
  for (const auto& cmd : cmds) {
    auto* sub = app.add_subcommand(cmd.name, cmd.help);
    subs[cmd.name] = sub;
    sub->add_option("--config", config_paths[cmd.name], "JSON config file");
    for (const auto& p : cmd.params) {
      auto* opt = sub->add_option("--" + p.name, flags[cmd.name][p.name], p.help);
      if (p.kind == Kind::CountList || p.kind == Kind::TextList) opt->delimiter(',');
      else opt->expected(1);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("config", e.what());
    return 2;
  }

  try {
    for (const auto& cmd : cmds) {
      if (!subs[cmd.name]->parsed()) continue;
      json resolved = json::object();
      for (const auto& p : cmd.params) resolved[p.name] = p.fallback;
      if (const char* env = std::getenv("HARMEX_CONFIG"); env && *env)
        merge_section(resolved, config_section(env, cmd.name), cmd, env);
      if (!config_paths[cmd.name].empty())
        merge_section(resolved, config_section(config_paths[cmd.name], cmd.name), cmd, config_paths[cmd.name]);
      for (const auto& p : cmd.params) {
        const auto& given = flags[cmd.name][p.name];
        if (given.empty()) continue;
        if (p.kind == Kind::CountList || p.kind == Kind::TextList) {
          json list = json::array();
          for (const auto& s : given) list.push_back(scalar_from_text(p, s));
          resolved[p.name] = list;
        } else {
          resolved[p.name] = scalar_from_text(p, given.back());
        }
      }
      for (const auto& p : cmd.params) {
        const auto& v = resolved[p.name];
        if (p.required && ((v.is_string() && v.get<std::string>().empty()) || (v.is_array() && v.empty())))
          config_error("--" + p.name + " is required for '" + cmd.name + "'");
      }

      const Params params(resolved);
      if (const auto where = cmd.run(params)) {
        std::ofstream out(*where, std::ios::trunc);
        out << json{{"command", cmd.name}, {"params", resolved}}.dump(2) << '\n';
        if (!out) detail::fail(ErrorCategory::Io, where->string() + ": cannot write resolved config");
      }
    }
  } catch (const Error& e) {
    report_error(category_name(e.category()), e.what());
    return 1;
  } catch (const std::exception& e) {
    report_error("internal", e.what());
    return 3;
  }
  return 0;
}
