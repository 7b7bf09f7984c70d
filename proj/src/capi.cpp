#include "borderstar.h"

#include <new>
#include <string>

#include "borderstar/io.hpp"

struct bsr_result {
  int status = 2;
  std::string json_text;
  std::string table_text;
};

extern "C" {

int bsr_run(const char* command, const char* request_json, bsr_result** out) {
  if (out == nullptr) return 2;
  *out = nullptr;
  auto* r = new (std::nothrow) bsr_result;
  if (r == nullptr) return 2;
  try {
    bsr::io::json request =
        bsr::io::json::parse(request_json ? request_json : "");
    auto run = bsr::io::dispatch(command ? command : "", request);
    r->status = run.exit_code;
    r->json_text = bsr::io::render_json(run.output);
    r->table_text = bsr::io::render_table(run.output);
  } catch (const std::exception& e) {
    bsr::io::json err{{"status", "error"},
                      {"code", "InputError"},
                      {"message", e.what()}};
    r->status = 2;
    r->json_text = bsr::io::render_json(err);
    r->table_text = bsr::io::render_table(err);
  }
  *out = r;
  return r->status;
}

int bsr_result_status(const bsr_result* r) { return r ? r->status : 2; }

const char* bsr_result_json(const bsr_result* r) {
  return r ? r->json_text.c_str() : "";
}

const char* bsr_result_table(const bsr_result* r) {
  return r ? r->table_text.c_str() : "";
}

void bsr_result_free(bsr_result* r) { delete r; }

const char* bsr_version(void) { return "1.0.0"; }

}  // extern "C"
