#include "vibcool/vibcool.h"

#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "vibcool/config.hpp"
#include "vibcool/errors.hpp"
#include "vibcool/runner.hpp"

extern "C" {

struct vibcool_session {
  std::string config_text;
  std::string config_name;
  std::vector<std::pair<std::string, std::string>> overrides;  // section.key -> value
  std::unique_ptr<vibcool::Runner> runner;  // rebuilt when overrides change
  std::string last_error;
  vibcool_progress_fn progress_fn = nullptr;
  void* progress_user = nullptr;
};

}  // extern "C"

namespace {

std::string g_open_error;  // message of the last failed open

vibcool_status status_of(const std::exception& e) {
  if (dynamic_cast<const vibcool::ConfigError*>(&e)) return VIBCOOL_ERROR_CONFIG;
  if (dynamic_cast<const vibcool::NumericError*>(&e)) return VIBCOOL_ERROR_NUMERIC;
  return VIBCOOL_ERROR;
}

// Appends the overrides as config lines; the parser lets later keys win.
std::string effective_text(const vibcool_session& s) {
  std::string text = s.config_text;
  for (const auto& [key, value] : s.overrides) {
    const auto dot = key.find('.');
    if (dot == std::string::npos) {
      throw vibcool::ConfigError("override key '" + key + "' must look like 'section.key'");
    }
    text += "\n[" + key.substr(0, dot) + "]\n" + key.substr(dot + 1) + " = " + value + "\n";
  }
  return text;
}

vibcool_status ensure_runner(vibcool_session* s) {
  if (s->runner) return VIBCOOL_OK;
  try {
    auto cfg = vibcool::parse_config_text(effective_text(*s), s->config_name);
    s->runner = std::make_unique<vibcool::Runner>(std::move(cfg));
    if (s->progress_fn) {
      auto fn = s->progress_fn;
      auto user = s->progress_user;
      s->runner->set_progress([fn, user](const std::string& line) { fn(user, line.c_str()); });
    }
    return VIBCOOL_OK;
  } catch (const std::exception& e) {
    s->last_error = e.what();
    return status_of(e);
  }
}

vibcool_status open_common(std::string text, std::string name,
                           vibcool_session** out_session) {
  if (!out_session) return VIBCOOL_ERROR_CONFIG;
  *out_session = nullptr;
  auto s = std::make_unique<vibcool_session>();
  s->config_text = std::move(text);
  s->config_name = std::move(name);
  const vibcool_status st = ensure_runner(s.get());
  if (st != VIBCOOL_OK) {
    g_open_error = s->last_error;
    return st;
  }
  *out_session = s.release();
  return VIBCOOL_OK;
}

}  // namespace

extern "C" {

const char* vibcool_version(void) { return "0.1.0"; }

vibcool_status vibcool_open(const char* config_path, vibcool_session** out_session) {
  if (!config_path) return VIBCOOL_ERROR_CONFIG;
  std::ifstream in(config_path);
  if (!in) {
    g_open_error = std::string("cannot open config file: ") + config_path;
    if (out_session) *out_session = nullptr;
    return VIBCOOL_ERROR_CONFIG;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return open_common(buf.str(), config_path, out_session);
}

vibcool_status vibcool_open_text(const char* config_text, vibcool_session** out_session) {
  if (!config_text) return VIBCOOL_ERROR_CONFIG;
  return open_common(config_text, "<config>", out_session);
}

void vibcool_close(vibcool_session* session) { delete session; }

vibcool_status vibcool_set(vibcool_session* session, const char* key, const char* value) {
  if (!session) return VIBCOOL_ERROR_CONFIG;
  if (!key || !value) {
    session->last_error = "vibcool_set: key and value must be non-NULL";
    return VIBCOOL_ERROR_CONFIG;
  }
  session->overrides.emplace_back(key, value);
  session->runner.reset();  // revalidate lazily with the new entry
  const vibcool_status st = ensure_runner(session);
  if (st != VIBCOOL_OK) session->overrides.pop_back();
  return st;
}

void vibcool_set_progress(vibcool_session* session, vibcool_progress_fn fn, void* user) {
  if (!session) return;
  session->progress_fn = fn;
  session->progress_user = user;
  if (session->runner) {
    if (fn) {
      session->runner->set_progress(
          [fn, user](const std::string& line) { fn(user, line.c_str()); });
    } else {
      session->runner->set_progress({});
    }
  }
}

vibcool_status vibcool_run(vibcool_session* session, const char* stage,
                           const char* out_dir) {
  if (!session) return VIBCOOL_ERROR_CONFIG;
  if (!stage) {
    session->last_error = "vibcool_run: stage must be non-NULL";
    return VIBCOOL_ERROR_CONFIG;
  }
  const vibcool_status st = ensure_runner(session);
  if (st != VIBCOOL_OK) return st;
  try {
    if (out_dir) session->runner->set_out_dir(out_dir);
    session->runner->run(stage);
    return VIBCOOL_OK;
  } catch (const std::exception& e) {
    session->last_error = e.what();
    return status_of(e);
  }
}

vibcool_status vibcool_metric(vibcool_session* session, const char* name,
                              double* out_value) {
  if (!session || !name || !out_value) return VIBCOOL_ERROR_CONFIG;
  if (!session->runner) {
    session->last_error = "vibcool_metric: no completed run";
    return VIBCOOL_ERROR_CONFIG;
  }
  try {
    *out_value = session->runner->metric(name);
    return VIBCOOL_OK;
  } catch (const std::exception& e) {
    session->last_error = e.what();
    return status_of(e);
  }
}

const char* vibcool_last_error(const vibcool_session* session) {
  return session ? session->last_error.c_str() : g_open_error.c_str();
}

}  // extern "C"
