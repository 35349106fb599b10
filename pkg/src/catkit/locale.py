"""Localised UI label bundles (Italian, French, German, English)."""

LABELS = {
    "en": {
        "reference": "Reference",
        "colouring": "Your colouring",
        "feedback_on": "Feedback on",
        "feedback_off": "Feedback off",
        "retry": "Retry",
        "surrender": "Skip",
        "progress": "Schema {index} of {total}",
        "score": "Score",
        "correct": "correct",
        "incorrect": "incorrect",
        "skipped": "skipped",
        "pending": "pending",
        "training_help": "Practice schema: try the commands, mistakes are free.",
    },
    "it": {
        "reference": "Schema di riferimento",
        "colouring": "La tua colorazione",
        "feedback_on": "Feedback attivo",
        "feedback_off": "Feedback disattivato",
        "retry": "Riprova",
        "surrender": "Salta",
        "progress": "Schema {index} di {total}",
        "score": "Punteggio",
        "correct": "corretto",
        "incorrect": "sbagliato",
        "skipped": "saltato",
        "pending": "in corso",
        "training_help": "Schema di prova: sperimenta i comandi, sbagliare è gratis.",
    },
    "fr": {
        "reference": "Schéma de référence",
        "colouring": "Ton coloriage",
        "feedback_on": "Retour visuel activé",
        "feedback_off": "Retour visuel désactivé",
        "retry": "Réessayer",
        "surrender": "Passer",
        "progress": "Schéma {index} sur {total}",
        "score": "Score",
        "correct": "correct",
        "incorrect": "incorrect",
        "skipped": "passé",
        "pending": "en cours",
        "training_help": "Schéma d'entraînement : essaie les commandes, l'erreur ne coûte rien.",
    },
    "de": {
        "reference": "Vorlage",
        "colouring": "Deine Färbung",
        "feedback_on": "Feedback an",
        "feedback_off": "Feedback aus",
        "retry": "Nochmal",
        "surrender": "Überspringen",
        "progress": "Schema {index} von {total}",
        "score": "Punkte",
        "correct": "richtig",
        "incorrect": "falsch",
        "skipped": "übersprungen",
        "pending": "offen",
        "training_help": "Übungsschema: probiere die Befehle aus, Fehler kosten nichts.",
    },
}


def labels_for(lang: str) -> dict:
    return LABELS.get(lang, LABELS["en"])
