#include "streamfuzz/ingest.hpp"

namespace streamfuzz {

namespace {

// Value sets from the published KDD-CUP'99 task description. The service list
// is the full 70-name set (a few names only occur in the test portion).
const char* const kProtocols[] = {"tcp", "udp", "icmp"};

const char* const kServices[] = {
    "aol",        "auth",        "bgp",        "courier",  "csnet_ns",    "ctf",
    "daytime",    "discard",     "domain",     "domain_u", "echo",        "eco_i",
    "ecr_i",      "efs",         "exec",       "finger",   "ftp",         "ftp_data",
    "gopher",     "harvest",     "hostnames",  "http",     "http_2784",   "http_443",
    "http_8001",  "imap4",       "IRC",        "iso_tsap", "klogin",      "kshell",
    "ldap",       "link",        "login",      "mtp",      "name",        "netbios_dgm",
    "netbios_ns", "netbios_ssn", "netstat",    "nnsp",     "nntp",        "ntp_u",
    "other",      "pm_dump",     "pop_2",      "pop_3",    "printer",     "private",
    "red_i",      "remote_job",  "rje",        "shell",    "smtp",        "sql_net",
    "ssh",        "sunrpc",      "supdup",     "systat",   "telnet",      "tftp_u",
    "tim_i",      "time",        "urh_i",      "urp_i",    "uucp",        "uucp_path",
    "vmnet",      "whois",       "X11",        "Z39_50"};

const char* const kFlags[] = {"OTH", "REJ",  "RSTO", "RSTOS0", "RSTR", "S0",
                              "S1",  "S2",   "S3",   "SF",     "SH"};

// normal + the 22 attack names, grouped into the four attack classes.
// Mirrors data/kdd_label_map.csv.
struct LabelEntry {
  const char* name;
  int code;
};

const LabelEntry kLabelTable[] = {
    {"normal", kClassNormal},
    {"back", kClassDos},
    {"land", kClassDos},
    {"neptune", kClassDos},
    {"pod", kClassDos},
    {"smurf", kClassDos},
    {"teardrop", kClassDos},
    {"ipsweep", kClassProbe},
    {"nmap", kClassProbe},
    {"portsweep", kClassProbe},
    {"satan", kClassProbe},
    {"ftp_write", kClassR2l},
    {"guess_passwd", kClassR2l},
    {"imap", kClassR2l},
    {"multihop", kClassR2l},
    {"phf", kClassR2l},
    {"spy", kClassR2l},
    {"warezclient", kClassR2l},
    {"warezmaster", kClassR2l},
    {"buffer_overflow", kClassU2r},
    {"loadmodule", kClassU2r},
    {"perl", kClassU2r},
    {"rootkit", kClassU2r},
};

}  // namespace

const CategoricalVocab& kdd_default_vocab() {
  static const CategoricalVocab vocab = [] {
    CategoricalVocab v;
    for (const char* p : kProtocols) v.protocol.emplace_back(p);
    for (const char* s : kServices) v.service.emplace_back(s);
    for (const char* f : kFlags) v.flag.emplace_back(f);
    return v;
  }();
  return vocab;
}

LabelMap kdd_default_label_map() {
  LabelMap map;
  for (const auto& entry : kLabelTable) map.classes[entry.name] = entry.code;
  return map;
}

int class_code_from_name(const std::string& name) {
  if (name == "normal") return kClassNormal;
  if (name == "dos") return kClassDos;
  if (name == "probe") return kClassProbe;
  if (name == "r2l") return kClassR2l;
  if (name == "u2r") return kClassU2r;
  return kUnknownClass;
}

const char* class_name(int code) {
  switch (code) {
    case kClassNormal: return "normal";
    case kClassDos: return "dos";
    case kClassProbe: return "probe";
    case kClassR2l: return "r2l";
    case kClassU2r: return "u2r";
    default: return "unknown";
  }
}

}  // namespace streamfuzz
