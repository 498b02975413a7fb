#include "synsal/run_config.hpp"

#include <nlohmann/json.hpp>

#include <set>

#include "synsal/error.hpp"
#include "synsal/png_io.hpp"

namespace synsal {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& why) {
  throw ConfigError("config field '" + field + "': " + why);
}

class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail(path_, "must be an object");
  }

  ~Section() = default;

  template <typename T>
  void get(const char* key, T& out) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    try {
      out = j_.at(key).get<T>();
    } catch (const json::exception&) {
      fail(path_ + "." + key, "has the wrong type");
    }
  }

  void get_path(const char* key, std::filesystem::path& out) {
    std::string s = out.string();
    get(key, s);
    out = s;
  }

  bool has(const char* key) {
    seen_.insert(key);
    return j_.contains(key);
  }

  const json& sub(const char* key) {
    seen_.insert(key);
    return j_.at(key);
  }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.contains(key)) fail(path_ + "." + key, "unknown key");
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

void parse_augment(const json& j, AugmentConfig& aug) {
  Section s(j, "train.augment");
  s.get("flip", aug.use_flip);
  s.get("scale", aug.use_scale);
  s.get("scale_height", aug.scale_h);
  s.get("scale_width", aug.scale_w);
  s.get("fda", aug.use_fda);
  s.get("fda_beta", aug.fda_beta);
  s.finish();
}

void parse_train(const json& j, TrainConfig& train) {
  Section s(j, "train");
  s.get("rounds", train.schedule.rounds);
  s.get("source_props", train.schedule.source_props);
  s.get("target_props", train.schedule.target_props);
  s.get("batch_size", train.batch_size);
  s.get("epochs_per_round", train.epochs_per_round);
  s.get("train_height", train.train_h);
  s.get("train_width", train.train_w);
  s.get("test_height", train.test_h);
  s.get("test_width", train.test_w);
  s.get("lr_max", train.lr_max);
  s.get("momentum", train.momentum);
  s.get("k", train.k);
  s.get("use_ppr", train.use_ppr);
  s.get("degen_lo", train.selection.degen_lo);
  s.get("degen_hi", train.selection.degen_hi);
  if (s.has("augment")) parse_augment(s.sub("augment"), train.augment);
  s.finish();
}

}  // namespace

RunConfig run_config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  RunConfig cfg;
  cfg.raw_text = text;

  Section root(j, "");
  root.get("seed", cfg.seed);
  root.get("workers", cfg.workers);

  if (root.has("paths")) {
    Section s(root.sub("paths"), "paths");
    s.get_path("assets_source", cfg.assets_source_dir);
    s.get_path("assets_target", cfg.assets_target_dir);
    s.get_path("data", cfg.data_dir);
    s.get_path("runs", cfg.runs_dir);
    s.finish();
  }
  if (root.has("dataset")) {
    Section s(root.sub("dataset"), "dataset");
    s.get("n_source", cfg.n_source);
    s.get("n_target_train", cfg.n_target_train);
    s.get("n_target_eval", cfg.n_target_eval);
    s.get("canvas_height", cfg.asset_cfg.bg_height);
    s.get("canvas_width", cfg.asset_cfg.bg_width);
    s.get("fg_height", cfg.asset_cfg.fg_height);
    s.get("fg_width", cfg.asset_cfg.fg_width);
    s.get("scale_lo", cfg.scale_range.lo);
    s.get("scale_hi", cfg.scale_range.hi);
    s.finish();
  }
  if (root.has("shift")) {
    Section s(root.sub("shift"), "shift");
    s.get("gamma_lo", cfg.shift.gamma_lo);
    s.get("gamma_hi", cfg.shift.gamma_hi);
    s.get("color_lo", cfg.shift.color_lo);
    s.get("color_hi", cfg.shift.color_hi);
    s.get("noise_sigma", cfg.shift.noise_sigma);
    s.get("blur_radius", cfg.shift.blur_radius);
    s.get("blur_prob", cfg.shift.blur_prob);
    s.finish();
  }
  if (root.has("train")) parse_train(root.sub("train"), cfg.train);
  root.finish();

  cfg.train.seed = cfg.seed;
  cfg.train.workers = cfg.workers;
  cfg.validate();
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  return run_config_from_json(std::string(bytes.begin(), bytes.end()));
}

void RunConfig::validate() const {
  if (n_source < 1) fail("dataset.n_source", "must be >= 1");
  if (n_target_train < 1) fail("dataset.n_target_train", "must be >= 1");
  if (n_target_eval < 1) fail("dataset.n_target_eval", "must be >= 1");
  if (asset_cfg.fg_height < 1 || asset_cfg.fg_width < 1) {
    fail("dataset.fg_height/fg_width", "must be >= 1");
  }
  if (asset_cfg.bg_height < 1 || asset_cfg.bg_width < 1) {
    fail("dataset.canvas_height/canvas_width", "must be >= 1");
  }
  if (!(scale_range.lo > 0.0) || scale_range.hi < scale_range.lo) {
    fail("dataset.scale_lo/scale_hi", "need 0 < lo <= hi");
  }
  if (!(shift.gamma_lo > 0.0) || shift.gamma_hi < shift.gamma_lo) {
    fail("shift.gamma_lo/gamma_hi", "need 0 < lo <= hi");
  }
  if (!(shift.color_lo >= 0.0) || shift.color_hi < shift.color_lo) {
    fail("shift.color_lo/color_hi", "need 0 <= lo <= hi");
  }
  if (shift.noise_sigma < 0.0) fail("shift.noise_sigma", "must be >= 0");
  if (shift.blur_radius < 0) fail("shift.blur_radius", "must be >= 0");
  if (!(shift.blur_prob >= 0.0 && shift.blur_prob <= 1.0)) {
    fail("shift.blur_prob", "must be in [0,1]");
  }
  if (workers < 0) fail("workers", "must be >= 0");
  try {
    train.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config field 'train': ") + e.what());
  }
}

std::string run_config_to_json(const RunConfig& cfg) {
  json j{
      {"seed", cfg.seed},
      {"workers", cfg.workers},
      {"paths",
       {{"assets_source", cfg.assets_source_dir.string()},
        {"assets_target", cfg.assets_target_dir.string()},
        {"data", cfg.data_dir.string()},
        {"runs", cfg.runs_dir.string()}}},
      {"dataset",
       {{"n_source", cfg.n_source},
        {"n_target_train", cfg.n_target_train},
        {"n_target_eval", cfg.n_target_eval},
        {"canvas_height", cfg.asset_cfg.bg_height},
        {"canvas_width", cfg.asset_cfg.bg_width},
        {"fg_height", cfg.asset_cfg.fg_height},
        {"fg_width", cfg.asset_cfg.fg_width},
        {"scale_lo", cfg.scale_range.lo},
        {"scale_hi", cfg.scale_range.hi}}},
      {"shift",
       {{"gamma_lo", cfg.shift.gamma_lo},
        {"gamma_hi", cfg.shift.gamma_hi},
        {"color_lo", cfg.shift.color_lo},
        {"color_hi", cfg.shift.color_hi},
        {"noise_sigma", cfg.shift.noise_sigma},
        {"blur_radius", cfg.shift.blur_radius},
        {"blur_prob", cfg.shift.blur_prob}}},
      {"train",
       {{"rounds", cfg.train.schedule.rounds},
        {"source_props", cfg.train.schedule.source_props},
        {"target_props", cfg.train.schedule.target_props},
        {"batch_size", cfg.train.batch_size},
        {"epochs_per_round", cfg.train.epochs_per_round},
        {"train_height", cfg.train.train_h},
        {"train_width", cfg.train.train_w},
        {"test_height", cfg.train.test_h},
        {"test_width", cfg.train.test_w},
        {"lr_max", cfg.train.lr_max},
        {"momentum", cfg.train.momentum},
        {"k", cfg.train.k},
        {"use_ppr", cfg.train.use_ppr},
        {"degen_lo", cfg.train.selection.degen_lo},
        {"degen_hi", cfg.train.selection.degen_hi},
        {"augment",
         {{"flip", cfg.train.augment.use_flip},
          {"scale", cfg.train.augment.use_scale},
          {"scale_height", cfg.train.augment.scale_h},
          {"scale_width", cfg.train.augment.scale_w},
          {"fda", cfg.train.augment.use_fda},
          {"fda_beta", cfg.train.augment.fda_beta}}}}},
  };
  return j.dump(2) + "\n";
}

}  // namespace synsal
