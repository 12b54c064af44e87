//! Prompt rendering: one sentence set per (surface, template) pair.
//!
//! The five paraphrase templates are artifact-authored wordings for the
//! labels original / formal / casual / minimal / verbose. They all render
//! the same operation sequence; `Minimal` drops role framing and units but
//! keeps the final question so the probe stays scoreable.

use crate::spec::{ParaphraseTemplate, SurfaceForm};

/// "5 widgets" / "1 widget". Plural nouns in the name lists are regular, so
/// the singular is the plural minus its trailing 's'.
fn count(n: i64, plural: &str) -> String {
    if n == 1 {
        format!("1 {}", &plural[..plural.len() - 1])
    } else {
        format!("{n} {plural}")
    }
}

pub(crate) fn arithmetic_prompt(
    surface: SurfaceForm,
    template: ParaphraseTemplate,
    entity: &str,
    initial: i64,
    deltas: &[i64],
) -> String {
    use ParaphraseTemplate as T;
    let mut s = Vec::with_capacity(deltas.len() + 2);
    match surface {
        SurfaceForm::Points => {
            s.push(match template {
                T::Original => format!("{entity} starts with {}.", count(initial, "points")),
                T::Formal => format!("At the outset, {entity} holds {}.", count(initial, "points")),
                T::Casual => format!("So {entity} kicks off with {}.", count(initial, "points")),
                T::Minimal => format!("{entity}: {initial}."),
                T::Verbose => format!(
                    "Here is a careful record of {entity}'s scoring session, noted step by step \
                     so that nothing is lost along the way. {entity} starts with {} on \
                     the board.",
                    count(initial, "points")
                ),
            });
            for d in deltas {
                let m = d.abs();
                let gained = *d >= 0;
                s.push(match template {
                    T::Original if gained => format!("{entity} gains {}.", count(m, "points")),
                    T::Original => format!("{entity} loses {}.", count(m, "points")),
                    T::Formal if gained => {
                        format!("{entity} subsequently acquires {}.", count(m, "points"))
                    }
                    T::Formal => format!("{entity} subsequently forfeits {}.", count(m, "points")),
                    T::Casual if gained => format!("Then {entity} picks up {}.", count(m, "points")),
                    T::Casual => format!("Then {entity} drops {}.", count(m, "points")),
                    T::Minimal if gained => format!("+{m}."),
                    T::Minimal => format!("-{m}."),
                    T::Verbose if gained => format!(
                        "In the next round, {entity} gains {}, and the running tally is updated \
                         accordingly.",
                        count(m, "points")
                    ),
                    T::Verbose => format!(
                        "In the next round, {entity} loses {}, and the running tally is updated \
                         accordingly.",
                        count(m, "points")
                    ),
                });
            }
            s.push(match template {
                T::Original => format!("What is {entity}'s current score?"),
                T::Formal => format!("Determine {entity}'s current score."),
                T::Casual => format!("What's {entity}'s score now?"),
                T::Minimal => "Final score?".to_string(),
                T::Verbose => format!(
                    "Taking into account every change described above, what is {entity}'s \
                     current score?"
                ),
            });
        }
        SurfaceForm::Inventory => {
            let items = entity;
            s.push(match template {
                T::Original => format!("The warehouse starts with {}.", count(initial, items)),
                T::Formal => {
                    format!("Initially, the warehouse stock stands at {}.", count(initial, items))
                }
                T::Casual => format!("So the warehouse starts out with {}.", count(initial, items)),
                T::Minimal => format!("{items}: {initial}."),
                T::Verbose => format!(
                    "What follows is the full receiving-and-shipping log for one stock item, \
                     kept in the order the events happened. The warehouse starts with {} on \
                     the shelf.",
                    count(initial, items)
                ),
            });
            for d in deltas {
                let m = d.abs();
                let gained = *d >= 0;
                s.push(match template {
                    T::Original if gained => format!("The warehouse receives {}.", count(m, items)),
                    T::Original => format!("The warehouse ships {}.", count(m, items)),
                    T::Formal if gained => {
                        format!("A delivery of {} is subsequently received.", count(m, items))
                    }
                    T::Formal => {
                        format!("A shipment of {} is subsequently dispatched.", count(m, items))
                    }
                    T::Casual if gained => format!("Then {} more show up.", count(m, items)),
                    T::Casual => format!("Then {} head out the door.", count(m, items)),
                    T::Minimal if gained => format!("+{m}."),
                    T::Minimal => format!("-{m}."),
                    T::Verbose if gained => format!(
                        "Later in the day, the warehouse receives {}, and the ledger is updated \
                         to reflect the arrival.",
                        count(m, items)
                    ),
                    T::Verbose => format!(
                        "Later in the day, the warehouse ships {}, and the ledger is updated \
                         to reflect the departure.",
                        count(m, items)
                    ),
                });
            }
            s.push(match template {
                T::Original => format!("How many {items} does the warehouse have now?"),
                T::Formal => format!("Determine the current number of {items} in the warehouse."),
                T::Casual => format!("How many {items} are left now?"),
                T::Minimal => "Final count?".to_string(),
                T::Verbose => format!(
                    "Considering the entire log above, how many {items} does the warehouse \
                     have now?"
                ),
            });
        }
        SurfaceForm::Accounts => {
            s.push(match template {
                T::Original => {
                    format!("{entity}'s account starts with a balance of {}.", count(initial, "dollars"))
                }
                T::Formal => format!(
                    "At the start of the statement period, {entity}'s account shows a balance \
                     of {}.",
                    count(initial, "dollars")
                ),
                T::Casual => format!("So {entity}'s account opens with {} in it.", count(initial, "bucks")),
                T::Minimal => format!("{entity}: {initial}."),
                T::Verbose => format!(
                    "Below is the complete transaction history for {entity}'s account during \
                     the period, listed in the order the transactions cleared. {entity}'s \
                     account starts with a balance of {}.",
                    count(initial, "dollars")
                ),
            });
            for d in deltas {
                let m = d.abs();
                let gained = *d >= 0;
                s.push(match template {
                    T::Original if gained => format!("{entity} deposits {}.", count(m, "dollars")),
                    T::Original => format!("{entity} withdraws {}.", count(m, "dollars")),
                    T::Formal if gained => {
                        format!("{entity} subsequently deposits {}.", count(m, "dollars"))
                    }
                    T::Formal => format!("{entity} subsequently withdraws {}.", count(m, "dollars")),
                    T::Casual if gained => format!("Then {entity} puts in {}.", count(m, "bucks")),
                    T::Casual => format!("Then {entity} takes out {}.", count(m, "bucks")),
                    T::Minimal if gained => format!("+{m}."),
                    T::Minimal => format!("-{m}."),
                    T::Verbose if gained => format!(
                        "A short while later, {entity} deposits {}, and the new balance is \
                         recorded.",
                        count(m, "dollars")
                    ),
                    T::Verbose => format!(
                        "A short while later, {entity} withdraws {}, and the new balance is \
                         recorded.",
                        count(m, "dollars")
                    ),
                });
            }
            s.push(match template {
                T::Original => format!("What is {entity}'s account balance now?"),
                T::Formal => format!("Determine the current balance of {entity}'s account."),
                T::Casual => format!("What's {entity}'s balance now?"),
                T::Minimal => "Final balance?".to_string(),
                T::Verbose => format!(
                    "Taking every transaction above into account, what is {entity}'s account \
                     balance now?"
                ),
            });
        }
        _ => unreachable!("arithmetic prompts require an arithmetic surface"),
    }
    s.join(" ")
}

pub(crate) fn assignment_prompt(
    surface: SurfaceForm,
    template: ParaphraseTemplate,
    subject: &str,
    initial: &str,
    assigns: &[String],
) -> String {
    use ParaphraseTemplate as T;
    let mut s = Vec::with_capacity(assigns.len() + 2);
    let (open, assign, question): (String, Vec<String>, String) = match surface {
        SurfaceForm::Color => (
            match template {
                T::Original => format!("The {subject} starts out {initial}."),
                T::Formal => format!("Initially, the {subject} is {initial}."),
                T::Casual => format!("So the {subject} starts out {initial}."),
                T::Minimal => format!("{subject}: {initial}."),
                T::Verbose => format!(
                    "Here is the full repainting history of one {subject}, given in the order \
                     the coats were applied. The {subject} starts out {initial}."
                ),
            },
            assigns
                .iter()
                .map(|v| match template {
                    T::Original => format!("The {subject} is painted {v}."),
                    T::Formal => format!("The {subject} is subsequently painted {v}."),
                    T::Casual => format!("Then it gets painted {v}."),
                    T::Minimal => format!("{v}."),
                    T::Verbose => format!(
                        "After another pass through the shop, the {subject} is painted {v}, \
                         covering the previous coat completely."
                    ),
                })
                .collect(),
            match template {
                T::Original => format!("What color is the {subject} now?"),
                T::Formal => format!("State the {subject}'s current color."),
                T::Casual => format!("What color's the {subject} now?"),
                T::Minimal => "Final color?".to_string(),
                T::Verbose => {
                    format!("Given the entire history above, what color is the {subject} now?")
                }
            },
        ),
        SurfaceForm::Location => (
            match template {
                T::Original => format!("The {subject} starts in the {initial}."),
                T::Formal => format!("Initially, the {subject} is located in the {initial}."),
                T::Casual => format!("So the {subject} starts off in the {initial}."),
                T::Minimal => format!("{subject}: {initial}."),
                T::Verbose => format!(
                    "What follows is the complete movement log for one supply {subject}, in \
                     the order the moves happened. The {subject} starts in the {initial}."
                ),
            },
            assigns
                .iter()
                .map(|v| match template {
                    T::Original => format!("The {subject} is moved to the {v}."),
                    T::Formal => format!("The {subject} is subsequently relocated to the {v}."),
                    T::Casual => format!("Then it gets wheeled over to the {v}."),
                    T::Minimal => format!("{v}."),
                    T::Verbose => format!(
                        "Some time later, the {subject} is moved to the {v}, and the log is \
                         updated with its new spot."
                    ),
                })
                .collect(),
            match template {
                T::Original => format!("Where is the {subject} now?"),
                T::Formal => format!("State the {subject}'s current location."),
                T::Casual => format!("Where's the {subject} now?"),
                T::Minimal => "Final location?".to_string(),
                T::Verbose => format!("Based on the whole log above, where is the {subject} now?"),
            },
        ),
        SurfaceForm::Status => (
            match template {
                T::Original => format!("The {subject} starts out {initial}."),
                T::Formal => format!("Initially, the {subject}'s status is {initial}."),
                T::Casual => format!("So the {subject} starts out {initial}."),
                T::Minimal => format!("{subject}: {initial}."),
                T::Verbose => format!(
                    "Here is the complete status history for one {subject}, recorded in the \
                     order the changes were made. The {subject} starts out {initial}."
                ),
            },
            assigns
                .iter()
                .map(|v| match template {
                    T::Original => format!("The {subject} is set to {v}."),
                    T::Formal => format!("The {subject}'s status is subsequently set to {v}."),
                    T::Casual => format!("Then somebody flips it to {v}."),
                    T::Minimal => format!("{v}."),
                    T::Verbose => format!(
                        "At the next change window, the {subject} is set to {v}, and the \
                         monitoring page is refreshed."
                    ),
                })
                .collect(),
            match template {
                T::Original => format!("What is the {subject}'s status now?"),
                T::Formal => format!("State the {subject}'s current status."),
                T::Casual => format!("What's the {subject}'s status now?"),
                T::Minimal => "Final status?".to_string(),
                T::Verbose => format!(
                    "Following the entire history above, what is the {subject}'s status now?"
                ),
            },
        ),
        _ => unreachable!("assignment prompts require a non-arithmetic surface"),
    };
    s.push(open);
    s.extend(assign);
    s.push(question);
    s.join(" ")
}

pub(crate) fn multi_entity_prompt(
    template: ParaphraseTemplate,
    initial: &[(String, i64)],
    ops: &[(String, i64)],
) -> String {
    use ParaphraseTemplate as T;
    let listing =
        initial.iter().map(|(n, v)| format!("{n}={v}")).collect::<Vec<_>>().join(", ");
    let k = initial.len();
    let mut s = Vec::with_capacity(ops.len() + 2);
    s.push(match template {
        T::Original => format!("A warehouse tracks {k} items: {listing}."),
        T::Formal => format!("A warehouse maintains {k} stock lines: {listing}."),
        T::Casual => format!("So the warehouse has {k} items on the books: {listing}."),
        T::Minimal => format!("{listing}."),
        T::Verbose => format!(
            "Below is the complete day's ledger for a small warehouse, with every movement \
             recorded in order. At opening time the warehouse tracks {k} items: {listing}."
        ),
    });
    for (entity, delta) in ops {
        let m = delta.abs();
        let gained = *delta >= 0;
        let counted = count(m, &format!("{entity}s"));
        s.push(match template {
            T::Original if gained => format!("Receive {counted}."),
            T::Original => format!("Ship {counted}."),
            T::Formal if gained => format!("A delivery of {counted} is received."),
            T::Formal => format!("A shipment of {counted} is dispatched."),
            T::Casual if gained => format!("Then {counted} come in."),
            T::Casual => format!("Then {counted} go out."),
            T::Minimal if gained => format!("+{m} {entity}."),
            T::Minimal => format!("-{m} {entity}."),
            T::Verbose if gained => {
                format!("Later, the warehouse receives {counted}, and the board is updated.")
            }
            T::Verbose => {
                format!("Later, the warehouse ships {counted}, and the board is updated.")
            }
        });
    }
    s.push(match template {
        T::Original => {
            "What is the final count of each item? Answer in the form Item=Count for every item."
                .to_string()
        }
        T::Formal => "Report the final count of every item in the form Item=Count.".to_string(),
        T::Casual => "What's the final count for each item? Write it like Item=Count.".to_string(),
        T::Minimal => "Final counts as Item=Count?".to_string(),
        T::Verbose => {
            "Working through the whole ledger above, what is the final count of each item? \
             Answer in the form Item=Count for every item."
                .to_string()
        }
    });
    s.join(" ")
}
