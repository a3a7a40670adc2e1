// Copyright 2026 The relsurf Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <sstream>

#include "domains_internal.h"
#include "relsurf/result_text.h"

namespace relsurf::internal {
namespace {

const std::vector<std::string> kPriorities = {"low", "medium", "high", "urgent"};

std::optional<std::string> NormalizePriority(std::string_view p) {
  std::string l = Lower(TrimCopy(p));
  if (l.size() > 9 && l.substr(l.size() - 9) == "-priority") l.resize(l.size() - 9);
  if (l.size() > 9 && l.substr(l.size() - 9) == " priority") l.resize(l.size() - 9);
  if (std::find(kPriorities.begin(), kPriorities.end(), l) != kPriorities.end()) return l;
  return std::nullopt;
}

void AddTicketFields(ResultBuilder& b, const TicketRec& t) {
  b.Add("ticket_id", t.ticket_id)
      .Add("customer_id", t.customer_id)
      .Add("subject", t.subject)
      .Add("priority", t.priority)
      .Add("status", ToString(t.status));
}

TicketRec* FindTicket(SupportState& s, const std::string& id) {
  auto it = s.tickets.find(id);
  if (it == s.tickets.end()) {
    // Ticket ids are case-insensitive on input.
    for (auto& [key, t] : s.tickets) {
      if (Lower(key) == Lower(id)) return &t;
    }
    return nullptr;
  }
  return &it->second;
}

std::string NotFound(const std::string& id) {
  return ResultBuilder("error", "not_found").Add("ticket_id", id).str();
}

std::string CreateTicket(SupportState& s, const ToolArgs& args) {
  const std::string customer = ArgStr(args, "customer_id");
  const std::string subject = ArgStr(args, "subject");
  const std::string raw_priority = ArgStr(args, "priority");
  if (customer.empty()) return ErrorText("create_ticket", "customer_id required");
  if (subject.empty()) return ErrorText("create_ticket", "subject required");
  auto priority = NormalizePriority(raw_priority);
  if (!priority) {
    return ResultBuilder("error", "bad_priority")
        .Add("value", raw_priority)
        .Add("allowed", "low,medium,high,urgent")
        .str();
  }
  TicketRec t;
  t.ticket_id = "T-" + std::to_string(s.next_ticket_seq++);
  t.customer_id = customer;
  t.subject = subject;
  t.description = ArgStr(args, "description");
  t.priority = *priority;
  ResultBuilder b("ok", "created");
  AddTicketFields(b, t);
  s.tickets[t.ticket_id] = t;
  return b.str();
}

std::string UpdateTicket(SupportState& s, const ToolArgs& args) {
  const std::string id = ArgStr(args, "ticket_id");
  const std::string status = Lower(ArgStr(args, "status"));
  const std::string raw_priority = ArgStr(args, "priority");
  const std::string note = ArgStr(args, "note");
  TicketRec* t = FindTicket(s, id);
  if (!t) return NotFound(id);
  if (status.empty() && raw_priority.empty() && note.empty()) {
    return ErrorText("update_ticket", "nothing to update");
  }
  std::optional<std::string> priority;
  if (!raw_priority.empty()) {
    priority = NormalizePriority(raw_priority);
    if (!priority) return ResultBuilder("error", "bad_priority").Add("value", raw_priority).str();
  }
  if (!status.empty() && status != "open") {
    // Closing and escalating carry required fields of their own.
    return ResultBuilder("error", "bad_status")
        .Add("value", status)
        .Add("hint", "use close_ticket or escalate_ticket")
        .str();
  }
  if (!status.empty()) {
    t->status = TicketStatus::kOpen;
    t->resolution.clear();
  }
  if (priority) t->priority = *priority;
  if (!note.empty()) t->notes.push_back(note);
  ResultBuilder b("ok", "updated");
  AddTicketFields(b, *t);
  return b.str();
}

std::string CloseTicket(SupportState& s, const ToolArgs& args) {
  const std::string id = ArgStr(args, "ticket_id");
  const std::string resolution = ArgStr(args, "resolution");
  TicketRec* t = FindTicket(s, id);
  if (!t) return NotFound(id);
  if (resolution.empty()) return ErrorText("close_ticket", "resolution required");
  if (t->status == TicketStatus::kClosed) {
    return ResultBuilder("error", "already_closed").Add("ticket_id", t->ticket_id).str();
  }
  t->status = TicketStatus::kClosed;
  t->resolution = resolution;
  ResultBuilder b("ok", "closed");
  AddTicketFields(b, *t);
  b.Add("resolution", resolution);
  return b.str();
}

std::string EscalateTicket(SupportState& s, const ToolArgs& args) {
  const std::string id = ArgStr(args, "ticket_id");
  const std::string target = ArgStr(args, "escalate_to");
  TicketRec* t = FindTicket(s, id);
  if (!t) return NotFound(id);
  if (target.empty()) return ErrorText("escalate_ticket", "escalate_to required");
  if (t->status == TicketStatus::kClosed) {
    return ResultBuilder("error", "ticket_closed").Add("ticket_id", t->ticket_id).str();
  }
  t->status = TicketStatus::kEscalated;
  t->escalate_to = target;
  t->escalation_reason = ArgStr(args, "reason");
  ResultBuilder b("ok", "escalated");
  AddTicketFields(b, *t);
  b.Add("escalate_to", target);
  return b.str();
}

std::vector<std::string> Words(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{Lower(text)};
  std::string w;
  while (in >> w) {
    while (!w.empty() && !std::isalnum(static_cast<unsigned char>(w.back()))) w.pop_back();
    while (!w.empty() && !std::isalnum(static_cast<unsigned char>(w.front()))) w.erase(0, 1);
    if (!w.empty()) out.push_back(w);
  }
  return out;
}

std::string SearchKb(const SupportState& s, const ToolArgs& args) {
  const std::string query = ArgStr(args, "query");
  const std::string category = Lower(ArgStr(args, "category"));
  const auto terms = Words(query);
  ResultBuilder b("kb", "search");
  b.Add("query", query);
  std::vector<const KBArticle*> hits;
  for (const auto& a : s.kb) {
    if (!category.empty() && Lower(a.category) != category) continue;
    const std::string hay = Lower(a.title + " " + a.body + " " + a.category);
    bool all = true;
    for (const auto& term : terms) {
      if (hay.find(term) == std::string::npos) {
        all = false;
        break;
      }
    }
    if (all) hits.push_back(&a);
  }
  std::sort(hits.begin(), hits.end(), [](const KBArticle* x, const KBArticle* y) {
    return NaturalIdLess(x->article_id, y->article_id);
  });
  b.Add("count", static_cast<long long>(hits.size()));
  for (const KBArticle* a : hits) {
    b.Row()
        .Add("article_id", a->article_id)
        .Add("title", a->title)
        .Add("category", a->category)
        .Add("body", a->body);
  }
  return b.str();
}

std::string ListOpenTickets(const SupportState& s, const ToolArgs& args) {
  const std::string raw_priority = ArgStr(args, "priority");
  const std::string customer = ArgStr(args, "customer_id");
  std::optional<std::string> priority;
  if (!raw_priority.empty()) {
    priority = NormalizePriority(raw_priority);
    if (!priority) return ResultBuilder("error", "bad_priority").Add("value", raw_priority).str();
  }
  std::vector<const TicketRec*> hits;
  for (const auto& [id, t] : s.tickets) {
    if (t.status == TicketStatus::kClosed) continue;
    if (priority && t.priority != *priority) continue;
    if (!customer.empty() && Lower(t.customer_id) != Lower(customer)) continue;
    hits.push_back(&t);
  }
  std::sort(hits.begin(), hits.end(), [](const TicketRec* x, const TicketRec* y) {
    return NaturalIdLess(x->ticket_id, y->ticket_id);
  });
  ResultBuilder b("tickets", "open");
  b.Add("count", static_cast<long long>(hits.size()));
  for (const TicketRec* t : hits) {
    b.Row();
    AddTicketFields(b, *t);
  }
  return b.str();
}

// --- suite -------------------------------------------------------------------

struct Issue {
  std::string subject;
  std::string resolution;
};

const std::vector<Issue> kIssues = {
    {"Login failure", "Password reset link sent"},
    {"Refund request", "Refund issued to original card"},
    {"Broken charger", "Replacement unit shipped"},
    {"Invoice missing", "Invoice re-sent by email"},
    {"Slow dashboard", "Cache cleared on account"},
    {"Wrong size delivered", "Exchange label emailed"},
};

struct KbSeed {
  std::string title, category, body, query;
};

const std::vector<KbSeed> kKb = {
    {"Resetting your password", "account",
     "Use the forgot password link to reset access.", "password reset"},
    {"Requesting a refund", "billing", "Refunds post within five business days.",
     "refund policy"},
    {"Two-factor setup", "security", "Enable two-factor authentication in settings.",
     "two-factor authentication"},
    {"Data export", "engineering", "Exports run nightly and arrive as CSV files.",
     "data export"},
    {"Shipping delays", "logistics", "Carrier delays are posted on the status page.",
     "shipping delays"},
};

const std::vector<std::string> kTeams = {"billing", "engineering", "security", "tier-2"};

std::string Customer(Rng& rng) { return "C-" + std::to_string(1000 + rng.Below(9000)); }

SupportState BaseState(Rng& rng) {
  SupportState s;
  for (std::size_t i = 0; i < kKb.size(); ++i) {
    s.kb.push_back({"KB-" + std::to_string(i + 1), kKb[i].title, kKb[i].category, kKb[i].body});
  }
  const int existing = 2 + static_cast<int>(rng.Below(3));
  for (int i = 0; i < existing; ++i) {
    TicketRec t;
    t.ticket_id = "T-" + std::to_string(s.next_ticket_seq++);
    t.customer_id = Customer(rng);
    t.subject = Pick(rng, kIssues).subject;
    t.priority = Pick(rng, kPriorities);
    s.tickets[t.ticket_id] = t;
  }
  return s;
}

TaskSpec CreateCloseTask(std::string id, Rng& rng) {
  SupportState s = BaseState(rng);
  const Issue& issue = Pick(rng, kIssues);
  const std::string customer = Customer(rng);
  const std::string priority = Pick(rng, std::vector<std::string>{"low", "medium", "high"});
  TaskSpec t;
  t.task_id = std::move(id);
  t.domain = Domain::kSupport;
  t.complexity = Complexity::kL1;
  t.description = "Create a " + priority + "-priority support ticket for customer " +
                  customer + " about '" + issue.subject +
                  "'. Then close it with the resolution '" + issue.resolution + "'.";
  t.initial_state = std::move(s);
  t.verifier_id = "support_create_close";
  t.verifier_params = {{"customer_id", customer},
                       {"subject", issue.subject},
                       {"priority", priority},
                       {"resolution", issue.resolution}};
  t.goal_meta = {"support_create_close",
                 {{"priority", EntityKind::kCode, priority},
                  {"customer_id", EntityKind::kId, customer},
                  {"subject", EntityKind::kText, issue.subject},
                  {"resolution", EntityKind::kText, issue.resolution}}};
  return t;
}

TaskSpec EscalateTask(std::string id, Rng& rng) {
  SupportState s = BaseState(rng);
  // Escalate one of the pre-existing tickets.
  auto it = s.tickets.begin();
  std::advance(it, static_cast<long>(rng.Below(s.tickets.size())));
  const TicketRec& ticket = it->second;
  const std::string team = Pick(rng, kTeams);
  const std::string query = Pick(rng, kKb).query;
  TaskSpec t;
  t.task_id = std::move(id);
  t.domain = Domain::kSupport;
  t.complexity = Complexity::kL2;
  t.description = "Escalate ticket " + ticket.ticket_id + " for customer " +
                  ticket.customer_id + " to the " + team +
                  " team. Search the knowledge base for '" + query + "' first.";
  t.verifier_id = "support_escalate";
  t.verifier_params = {{"ticket_id", ticket.ticket_id}, {"escalate_to", team}};
  t.goal_meta = {"support_escalate",
                 {{"ticket_id", EntityKind::kId, ticket.ticket_id},
                  {"customer_id", EntityKind::kId, ticket.customer_id},
                  {"escalate_to", EntityKind::kCode, team},
                  {"kb_query", EntityKind::kText, query}}};
  t.initial_state = std::move(s);
  return t;
}

}  // namespace

std::string ApplySupport(SupportState& s, std::string_view tool, const ToolArgs& args) {
  if (tool == "create_ticket") return CreateTicket(s, args);
  if (tool == "update_ticket") return UpdateTicket(s, args);
  if (tool == "close_ticket") return CloseTicket(s, args);
  if (tool == "escalate_ticket") return EscalateTicket(s, args);
  if (tool == "search_knowledge_base") return SearchKb(s, args);
  if (tool == "list_open_tickets") return ListOpenTickets(s, args);
  return ResultBuilder("error", "unknown_tool").Add("name", tool).str();
}

std::vector<TaskSpec> SupportSuite(Rng& rng) {
  std::vector<TaskSpec> out;
  out.push_back(CreateCloseTask("support-1", rng));
  out.push_back(EscalateTask("support-2", rng));
  out.push_back(CreateCloseTask("support-3", rng));
  out.push_back(EscalateTask("support-4", rng));
  out.push_back(CreateCloseTask("support-5", rng));
  return out;
}

}  // namespace relsurf::internal
