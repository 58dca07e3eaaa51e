// Copyright 2026 The fhtool Authors.
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

// fhtool: command-line front end. Uses only the C interface.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fht/fht.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInconsistent = 1;
constexpr int kExitError = 2;

struct Failure {
  std::string message;
};

void check(int status) {
  if (status < 0) throw Failure{std::string(fht_status_name(status)) + ": " + fht_last_error()};
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Rng = std::unique_ptr<fht_rng, Deleter<fht_rng, fht_rng_free>>;
using Key = std::unique_ptr<fht_key, Deleter<fht_key, fht_key_free>>;
using Verifier = std::unique_ptr<fht_verifier, Deleter<fht_verifier, fht_verifier_free>>;
using Bundle = std::unique_ptr<fht_bundle, Deleter<fht_bundle, fht_bundle_free>>;

std::string take(char* s) {
  std::string out = s ? s : "";
  fht_free(s);
  return out;
}

std::vector<std::uint8_t> take(std::uint8_t* p, std::size_t n) {
  std::vector<std::uint8_t> out(p, p + n);
  fht_free(p);
  return out;
}

std::vector<std::uint8_t> read_file(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{"cannot read " + path};
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string read_text(const std::string& path) {
  const auto bytes = read_file(path);
  return {bytes.begin(), bytes.end()};
}

void write_file(const std::string& path, const void* data, std::size_t n) {
  if (path == "-") {
    std::cout.write(static_cast<const char*>(data), static_cast<std::streamsize>(n));
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out.write(static_cast<const char*>(data), static_cast<std::streamsize>(n))) {
    throw Failure{"cannot write " + path};
  }
}

void write_file(const std::string& path, const std::string& s) { write_file(path, s.data(), s.size()); }

struct Common {
  std::optional<std::uint64_t> seed;
  bool paper_vector = false;
  std::string format = "text";

  bool json() const { return format == "json"; }
};

Rng make_rng(const Common& c, const std::string& scheme) {
  fht_rng* r = nullptr;
  if (c.paper_vector) {
    check(fht_rng_new_paper(scheme.c_str(), &r));
  } else if (c.seed) {
    check(fht_rng_new_seeded(*c.seed, &r));
  } else if (const char* env = std::getenv("FHT_SEED")) {
    try {
      check(fht_rng_new_seeded(std::stoull(env), &r));
    } catch (const std::logic_error&) {
      throw Failure{"FHT_SEED must be an unsigned integer"};
    }
  } else {
    check(fht_rng_new_system(&r));
  }
  return Rng(r);
}

Key load_key(const std::string& path) {
  fht_key* k = nullptr;
  check(fht_key_from_json(read_text(path).c_str(), &k));
  return Key(k);
}

Verifier load_verifier(const std::string& path) {
  fht_verifier* v = nullptr;
  check(fht_verifier_from_json(read_text(path).c_str(), &v));
  return Verifier(v);
}

Bundle load_bundle(const std::string& path) {
  const auto bytes = read_file(path);
  fht_bundle* b = nullptr;
  check(fht_bundle_parse(bytes.data(), bytes.size(), &b));
  return Bundle(b);
}

void save_bundle(const fht_bundle* b, const std::string& path, bool as_json) {
  std::uint8_t* out = nullptr;
  std::size_t n = 0;
  check(fht_bundle_serialize(b, as_json ? 1 : 0, &out, &n));
  const auto bytes = take(out, n);
  write_file(path, bytes.data(), bytes.size());
}

std::string json_quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') {
      out += '\\';
      out += ch;
    } else if (ch == '\n') {
      out += "\\n";
    } else {
      out += ch;
    }
  }
  return out + "\"";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cross-ratio feature homomorphic encryption and verification"};
  app.require_subcommand(1);
  Common common;
  std::uint64_t seed_value = 0;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", seed_value, "Fixed randomness seed (also FHT_SEED)");
    sub->add_flag("--paper-vector", common.paper_vector, "Replay the published randomness");
    sub->add_option("--format", common.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}));
  };

  // keygen
  auto* keygen = app.add_subcommand("keygen", "Create a key file");
  std::string scheme, proj, p, g, x, rv, key_out = "-", verifier_out;
  int symbol_offset = -1;
  keygen->add_option("--scheme", scheme, "Scheme")->required();
  keygen->add_option("--proj", proj, "Projection x0,y0,a,b,c");
  keygen->add_option("--p", p, "Prime modulus");
  keygen->add_option("--g", g, "Generator");
  keygen->add_option("--x", x, "Private exponent");
  keygen->add_option("--rv", rv, "Noise array, comma separated");
  keygen->add_option("--symbol-offset", symbol_offset, "Native symbol = byte + offset (0 or 1)");
  keygen->add_option("-o,--out", key_out, "Key file");
  keygen->add_option("--verifier-out", verifier_out, "Verifier-only key file");
  add_common(keygen);

  // encrypt / decrypt / hfv / verify
  std::string key_path, input = "-", output = "-", listing, side;
  bool bundle_json = false, show = false, show_crs = false;
  auto* encrypt = app.add_subcommand("encrypt", "Encrypt a file into a verification bundle");
  encrypt->add_option("-k,--key", key_path, "Key file")->required();
  encrypt->add_option("-i,--in", input, "Plaintext file");
  encrypt->add_option("-o,--out", output, "Bundle file");
  encrypt->add_flag("--json-bundle", bundle_json, "Write the JSON bundle form");
  encrypt->add_flag("--show", show, "Print the ciphertext listing");
  add_common(encrypt);

  auto* decrypt = app.add_subcommand("decrypt", "Decrypt a bundle or a ciphertext listing");
  decrypt->add_option("-k,--key", key_path, "Key file")->required();
  decrypt->add_option("-i,--in", input, "Bundle file");
  decrypt->add_option("--listing", listing, "Ciphertext listing text instead of a bundle");
  decrypt->add_option("-o,--out", output, "Plaintext file");
  add_common(decrypt);

  auto* hfv = app.add_subcommand("hfv", "Compute the HFV of a plaintext or a bundle");
  hfv->add_option("--side", side, "plain or cipher")->required()->check(CLI::IsMember({"plain", "cipher"}));
  hfv->add_option("-k,--key", key_path, "Key file (verifier file for the cipher side)")->required();
  hfv->add_option("-i,--in", input, "Plaintext or bundle file");
  hfv->add_flag("--crs", show_crs, "Also print the cross-ratio sequence");
  add_common(hfv);

  auto* verify = app.add_subcommand("verify", "Check a bundle: exit 0 consistent, 1 inconsistent, 2 malformed");
  verify->add_option("-k,--key", key_path, "Key or verifier file")->required();
  verify->add_option("-i,--in", input, "Bundle file");
  add_common(verify);

  // attack
  auto* attack = app.add_subcommand("attack", "Run an attack");
  attack->require_subcommand(1);
  std::string listing_file, group, transform, plaintext_path;
  int known_plain = -1;
  long known_index = 0;
  unsigned n = 0;
  bool count_only = false;
  std::uint64_t budget = 0;
  auto add_listing = [&](CLI::App* sub) {
    auto* grp = sub->add_option_group("ciphertext");
    grp->add_option("--listing", listing, "Exact rational ciphertext listing");
    grp->add_option("--listing-file", listing_file, "File holding the listing");
    grp->require_option(1);
  };
  auto* kpa = attack->add_subcommand("kpa", "Recover the center from one known pair");
  add_listing(kpa);
  kpa->add_option("--known-plain", known_plain, "Known plaintext byte")->required();
  kpa->add_option("--known-index", known_index, "Position of the known byte");
  kpa->add_option("--n", n, "Alphabet size");
  auto* coa_line = attack->add_subcommand("coa-line", "Recover the projection line");
  add_listing(coa_line);
  auto* coa_brute = attack->add_subcommand("coa-brute", "Enumerate centers from ciphertext alone");
  add_listing(coa_brute);
  coa_brute->add_option("--n", n, "Alphabet size");
  auto* collide = attack->add_subcommand("collide", "Forge data with the same cross-ratio");
  collide->add_option("--group", group, "Four values, comma separated");
  collide->add_option("--p", p, "Scale the group mod p instead");
  collide->add_option("--bundle", input, "Forge a whole bundle instead");
  collide->add_option("--transform", transform, "translate, shift or scale")
      ->check(CLI::IsMember({"translate", "shift", "scale"}));
  collide->add_option("-k,--key", key_path, "Key supplying p, g, y for the shift forgery");
  collide->add_option("--plaintext", plaintext_path, "Known plaintext for the shift forgery");
  collide->add_option("-o,--out", output, "Forged bundle file");
  auto* dictionary = attack->add_subcommand("dictionary", "Tabulate CRs of all distinct 4-tuples");
  dictionary->add_option("--p", p, "Prime modulus");
  dictionary->add_option("--n", n, "Alphabet size");
  dictionary->add_flag("--count-only", count_only, "Only compute the table size");
  dictionary->add_option("--memory-budget", budget, "Bytes allowed for the table");
  for (auto* sub : {kpa, coa_line, coa_brute, collide, dictionary}) add_common(sub);

  auto* demo = app.add_subcommand("demo-mult", "Multiply two groups under encryption");
  std::string text;
  demo->add_option("-k,--key", key_path, "native-kf key file")->required();
  demo->add_option("-i,--in", input, "Plaintext file");
  demo->add_option("--text", text, "Plaintext given inline");
  add_common(demo);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitError;
  }
  for (auto* sub : {keygen, encrypt, decrypt, hfv, verify, kpa, coa_line, coa_brute, collide,
                    dictionary, demo}) {
    if (sub->count("--seed")) common.seed = seed_value;
  }

  try {
    if (keygen->parsed()) {
      Common keygen_common = common;
      keygen_common.paper_vector = false;  // published vectors fix every key value
      Rng rng = make_rng(keygen_common, "");
      fht_keygen_params kp{scheme.c_str(),
                           proj.empty() ? nullptr : proj.c_str(),
                           p.empty() ? nullptr : p.c_str(),
                           g.empty() ? nullptr : g.c_str(),
                           x.empty() ? nullptr : x.c_str(),
                           rv.empty() ? nullptr : rv.c_str(),
                           common.paper_vector && symbol_offset < 0 ? 0 : symbol_offset};
      fht_key* k = nullptr;
      check(fht_keygen(&kp, rng.get(), &k));
      Key key(k);
      char* js = nullptr;
      check(fht_key_to_json(key.get(), &js));
      write_file(key_out, take(js));
      if (!verifier_out.empty()) {
        fht_verifier* v = nullptr;
        check(fht_key_verifier(key.get(), &v));
        Verifier ver(v);
        char* vj = nullptr;
        check(fht_verifier_to_json(ver.get(), &vj));
        write_file(verifier_out, take(vj));
      }
      if (key_out != "-") {
        char* summary = nullptr;
        check(fht_key_summary(key.get(), &summary));
        std::cout << take(summary);
      }
      return kExitOk;
    }

    if (encrypt->parsed()) {
      Key key = load_key(key_path);
      Rng rng = make_rng(common, fht_key_scheme(key.get()));
      const auto data = read_file(input);
      fht_bundle* b = nullptr;
      check(fht_encrypt(key.get(), data.data(), data.size(), rng.get(), &b));
      Bundle bundle(b);
      save_bundle(bundle.get(), output, bundle_json);
      char* hex = nullptr;
      check(fht_bundle_hfv(bundle.get(), &hex));
      std::ostream& info = output == "-" ? std::cerr : std::cout;
      if (common.json()) {
        info << "{\"scheme\": " << json_quote(fht_key_scheme(key.get())) << ", \"hfv\": "
             << json_quote(take(hex)) << "}\n";
      } else {
        info << "hfv: " << take(hex) << "\n";
      }
      if (show) {
        char* ct = nullptr;
        check(fht_bundle_ciphertext_text(bundle.get(), &ct));
        info << take(ct);
      }
      return kExitOk;
    }

    if (decrypt->parsed()) {
      Key key = load_key(key_path);
      std::uint8_t* out = nullptr;
      std::size_t len = 0;
      if (!listing.empty()) {
        check(fht_decrypt_listing(key.get(), listing.c_str(), &out, &len));
      } else {
        Bundle bundle = load_bundle(input);
        check(fht_bundle_decrypt(bundle.get(), key.get(), &out, &len));
      }
      const auto plain = take(out, len);
      write_file(output, plain.data(), plain.size());
      return kExitOk;
    }

    if (hfv->parsed()) {
      char* hex = nullptr;
      char* crs = nullptr;
      if (side == "plain") {
        Key key = load_key(key_path);
        const auto data = read_file(input);
        check(fht_hfv_plain(key.get(), data.data(), data.size(), &hex, &crs));
      } else {
        Verifier ver = load_verifier(key_path);
        Bundle bundle = load_bundle(input);
        check(fht_hfv_cipher(bundle.get(), ver.get(), &hex, &crs));
      }
      const std::string h = take(hex), c = take(crs);
      if (common.json()) {
        std::cout << "{\"hfv\": " << json_quote(h);
        if (show_crs) std::cout << ", \"crs\": " << json_quote(c);
        std::cout << "}\n";
      } else {
        std::cout << "hfv: " << h << "\n";
        if (show_crs) std::cout << "crs: " << c << "\n";
      }
      return kExitOk;
    }

    if (verify->parsed()) {
      Verifier ver = load_verifier(key_path);
      Bundle bundle = load_bundle(input);
      char* detail = nullptr;
      const int status = fht_verify(bundle.get(), ver.get(), &detail);
      check(status);
      const bool ok = status == FHT_OK;
      if (common.json()) {
        std::cout << "{\"consistent\": " << (ok ? "true" : "false")
                  << ", \"detail\": " << json_quote(take(detail)) << "}\n";
      } else {
        std::cout << (ok ? "consistent" : "inconsistent") << ": " << take(detail) << "\n";
      }
      return ok ? kExitOk : kExitInconsistent;
    }

    if (collide->parsed() && !transform.empty()) {
      if (input == "-") throw Failure{"--transform needs --bundle"};
      Bundle bundle = load_bundle(input);
      Rng rng = make_rng(common, fht_bundle_scheme(bundle.get()));
      Key key;
      if (!key_path.empty()) key = load_key(key_path);
      std::vector<std::uint8_t> plain;
      if (!plaintext_path.empty()) plain = read_file(plaintext_path);
      fht_bundle* forged = nullptr;
      char* description = nullptr;
      check(fht_forge_bundle(bundle.get(), transform.c_str(), plain.data(), plain.size(), key.get(),
                             rng.get(), &forged, &description));
      Bundle out(forged);
      save_bundle(out.get(), output, false);
      std::ostream& info = output == "-" ? std::cerr : std::cout;
      info << "forged: " << take(description) << "\n";
      return kExitOk;
    }

    for (auto* sub : {kpa, coa_line, coa_brute, collide, dictionary}) {
      if (!sub->parsed()) continue;
      if (!listing_file.empty()) listing = read_text(listing_file);
      fht_attack_params ap{sub->get_name().c_str(),
                           listing.empty() ? nullptr : listing.c_str(),
                           known_plain,
                           known_index,
                           group.empty() ? nullptr : group.c_str(),
                           p.empty() ? nullptr : p.c_str(),
                           n,
                           count_only ? 1 : 0,
                           budget,
                           common.json() ? 1 : 0};
      char* report = nullptr;
      int success = 0;
      check(fht_attack(&ap, &report, &success));
      std::cout << take(report);
      return success ? kExitOk : kExitInconsistent;
    }

    if (demo->parsed()) {
      Key key = load_key(key_path);
      Rng rng = make_rng(common, fht_key_scheme(key.get()));
      std::vector<std::uint8_t> data;
      if (demo->count("--text")) {
        data.assign(text.begin(), text.end());
      } else {
        data = read_file(input);
      }
      char* report = nullptr;
      check(fht_demo_mult(key.get(), data.data(), data.size(), rng.get(), common.json() ? 1 : 0,
                          &report));
      std::cout << take(report);
      return kExitOk;
    }
  } catch (const Failure& f) {
    std::cerr << "fhtool: " << f.message << "\n";
    return kExitError;
  }
  return kExitError;
}
