// Copyright 2026 The Refinery Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <array>

#include "refinery/lang_id.hpp"

namespace refinery {
namespace {

const std::vector<LabeledSample>& Training() {
  static const std::vector<LabeledSample> kSamples = {
      // English
      {"en", "The village library opens every morning at nine, and the first visitors are usually retired teachers "
             "who come to read the newspapers. By noon the tables are taken by students preparing for their exams, "
             "and in the afternoon children arrive with their parents to borrow picture books."},
      {"en", "When the weather turned cold, the farmers gathered the last of the apples and stored them in the barn. "
             "They knew that a long winter was coming, so they also repaired the roof, cut firewood for the stove "
             "and checked that the animals had enough hay to last until spring."},
      {"en", "Scientists have found that regular exercise improves memory and helps people sleep better at night. "
             "Even a short walk after dinner can make a difference, and those who keep moving throughout the day "
             "tend to report that they feel happier and more focused at work."},
      {"en", "Our company was founded twenty years ago by three friends who wanted to build better tools for small "
             "businesses. Today we have offices in four countries, but we still believe that listening to our "
             "customers is the most important thing we do."},
      {"en", "If you are planning a trip to the coast this summer, remember to book your room early because the "
             "hotels fill up quickly. The beaches are beautiful, the food is fresh, and there is always something "
             "to do in the evening, from concerts in the park to markets along the harbour."},
      {"en", "The history of the bridge goes back more than two hundred years. It was built with stone from a nearby "
             "quarry, and for a long time it was the only way to cross the river. Although it has been repaired "
             "many times, most of the original arches are still standing."},
      {"en", "She opened the letter slowly, afraid of what it might say. Her brother had not written in months, "
             "and the last news from the city had been worrying. But the first line made her smile: he was coming "
             "home for the holidays, and he would bring his new wife with him."},
      {"en", "Learning a new language takes time and patience. It helps to listen to music, watch films and talk "
             "with native speakers whenever you can. Do not worry about making mistakes, because every mistake is "
             "a chance to learn something that you will remember."},
      {"en", "The council will meet on Thursday to discuss the new plan for the town centre, which would close "
             "several streets to cars and add more space for shops, cafes and bicycles. Residents who want to share "
             "their opinion should write to the office before the end of the week."},
      {"en", "Bake the bread for about forty minutes, until the crust is golden and the loaf sounds hollow when you "
             "tap the bottom. Let it cool on a rack before slicing, and keep what is left in a paper bag so that it "
             "stays fresh for the next few days."},
      // French
      {"fr", "La bibliothèque du village ouvre tous les matins à neuf heures, et les premiers visiteurs sont souvent "
             "des enseignants à la retraite qui viennent lire les journaux. À midi, les tables sont occupées par des "
             "étudiants qui préparent leurs examens, et l'après-midi les enfants arrivent avec leurs parents."},
      {"fr", "Quand le temps est devenu froid, les paysans ont ramassé les dernières pommes et les ont rangées dans "
             "la grange. Ils savaient qu'un long hiver arrivait, alors ils ont aussi réparé le toit, coupé du bois "
             "pour le poêle et vérifié que les bêtes avaient assez de foin jusqu'au printemps."},
      {"fr", "Des chercheurs ont montré que l'exercice régulier améliore la mémoire et aide à mieux dormir la nuit. "
             "Même une courte promenade après le dîner peut faire une différence, et ceux qui bougent pendant la "
             "journée disent qu'ils se sentent plus heureux et plus concentrés au travail."},
      {"fr", "Notre entreprise a été fondée il y a vingt ans par trois amis qui voulaient créer de meilleurs outils "
             "pour les petites entreprises. Aujourd'hui nous avons des bureaux dans quatre pays, mais nous pensons "
             "toujours qu'écouter nos clients est la chose la plus importante que nous faisons."},
      {"fr", "Si vous prévoyez un voyage sur la côte cet été, pensez à réserver votre chambre tôt, car les hôtels se "
             "remplissent vite. Les plages sont belles, la nourriture est fraîche, et il y a toujours quelque chose "
             "à faire le soir, des concerts dans le parc aux marchés le long du port."},
      {"fr", "L'histoire du pont remonte à plus de deux cents ans. Il a été construit avec la pierre d'une carrière "
             "voisine, et pendant longtemps c'était le seul moyen de traverser la rivière. Bien qu'il ait été réparé "
             "de nombreuses fois, la plupart des arches d'origine sont encore debout."},
      {"fr", "Elle ouvrit la lettre lentement, inquiète de ce qu'elle pourrait contenir. Son frère n'avait pas écrit "
             "depuis des mois, et les dernières nouvelles de la ville étaient préoccupantes. Mais la première ligne "
             "la fit sourire : il rentrait pour les fêtes et il amènerait sa nouvelle femme."},
      {"fr", "Apprendre une nouvelle langue demande du temps et de la patience. Il est utile d'écouter de la "
             "musique, de regarder des films et de parler avec des locuteurs natifs dès que possible. Ne vous "
             "inquiétez pas des erreurs, car chaque erreur est une occasion d'apprendre."},
      {"fr", "Le conseil se réunira jeudi pour discuter du nouveau projet pour le centre-ville, qui fermerait "
             "plusieurs rues aux voitures et donnerait plus de place aux commerces, aux cafés et aux vélos. Les "
             "habitants qui veulent donner leur avis doivent écrire à la mairie avant la fin de la semaine."},
      {"fr", "Faites cuire le pain pendant environ quarante minutes, jusqu'à ce que la croûte soit dorée et que la "
             "miche sonne creux quand on tape dessous. Laissez-le refroidir sur une grille avant de le couper, et "
             "gardez le reste dans un sac en papier pour qu'il reste frais."},
      // German
      {"de", "Die Bibliothek im Dorf öffnet jeden Morgen um neun Uhr, und die ersten Besucher sind meistens "
             "pensionierte Lehrer, die kommen, um die Zeitungen zu lesen. Am Mittag sind die Tische von Studenten "
             "besetzt, die sich auf ihre Prüfungen vorbereiten, und am Nachmittag kommen die Kinder mit ihren Eltern."},
      {"de", "Als das Wetter kalt wurde, sammelten die Bauern die letzten Äpfel und lagerten sie in der Scheune. Sie "
             "wussten, dass ein langer Winter kommen würde, also reparierten sie auch das Dach, hackten Holz für den "
             "Ofen und prüften, ob die Tiere genug Heu bis zum Frühling hatten."},
      {"de", "Wissenschaftler haben herausgefunden, dass regelmäßige Bewegung das Gedächtnis verbessert und hilft, "
             "nachts besser zu schlafen. Schon ein kurzer Spaziergang nach dem Abendessen kann einen Unterschied "
             "machen, und wer sich den ganzen Tag bewegt, fühlt sich bei der Arbeit glücklicher."},
      {"de", "Unser Unternehmen wurde vor zwanzig Jahren von drei Freunden gegründet, die bessere Werkzeuge für "
             "kleine Betriebe bauen wollten. Heute haben wir Büros in vier Ländern, aber wir glauben immer noch, "
             "dass das Zuhören bei unseren Kunden das Wichtigste ist, was wir tun."},
      {"de", "Wenn Sie diesen Sommer eine Reise an die Küste planen, denken Sie daran, Ihr Zimmer früh zu buchen, "
             "weil die Hotels schnell ausgebucht sind. Die Strände sind schön, das Essen ist frisch, und am Abend "
             "gibt es immer etwas zu tun, von Konzerten im Park bis zu Märkten am Hafen."},
      {"de", "Die Geschichte der Brücke reicht mehr als zweihundert Jahre zurück. Sie wurde aus Stein aus einem "
             "nahen Steinbruch gebaut, und lange Zeit war sie der einzige Weg über den Fluss. Obwohl sie viele Male "
             "repariert wurde, stehen die meisten der ursprünglichen Bögen noch."},
      {"de", "Sie öffnete den Brief langsam, weil sie Angst hatte, was darin stehen könnte. Ihr Bruder hatte seit "
             "Monaten nicht geschrieben, und die letzten Nachrichten aus der Stadt waren beunruhigend. Aber die "
             "erste Zeile brachte sie zum Lächeln: er würde über die Feiertage nach Hause kommen."},
      {"de", "Eine neue Sprache zu lernen braucht Zeit und Geduld. Es hilft, Musik zu hören, Filme zu schauen und "
             "mit Muttersprachlern zu sprechen, wann immer es möglich ist. Machen Sie sich keine Sorgen über Fehler, "
             "denn jeder Fehler ist eine Gelegenheit, etwas zu lernen."},
      {"de", "Der Stadtrat wird sich am Donnerstag treffen, um den neuen Plan für die Innenstadt zu besprechen, der "
             "mehrere Straßen für Autos sperren und mehr Platz für Geschäfte, Cafés und Fahrräder schaffen würde. "
             "Bürger, die ihre Meinung sagen wollen, sollen bis zum Ende der Woche schreiben."},
      {"de", "Backen Sie das Brot etwa vierzig Minuten lang, bis die Kruste goldbraun ist und der Laib hohl klingt, "
             "wenn man auf den Boden klopft. Lassen Sie es auf einem Gitter abkühlen, bevor Sie es schneiden, und "
             "bewahren Sie den Rest in einer Papiertüte auf, damit es frisch bleibt."},
      // Spanish
      {"es", "La biblioteca del pueblo abre todas las mañanas a las nueve, y los primeros visitantes suelen ser "
             "maestros jubilados que vienen a leer los periódicos. Al mediodía las mesas están ocupadas por "
             "estudiantes que preparan sus exámenes, y por la tarde llegan los niños con sus padres."},
      {"es", "Cuando el tiempo se volvió frío, los campesinos recogieron las últimas manzanas y las guardaron en el "
             "granero. Sabían que se acercaba un invierno largo, así que también arreglaron el tejado, cortaron leña "
             "para la estufa y comprobaron que los animales tenían suficiente heno hasta la primavera."},
      {"es", "Los científicos han descubierto que el ejercicio regular mejora la memoria y ayuda a dormir mejor por "
             "la noche. Incluso un paseo corto después de la cena puede marcar la diferencia, y quienes se mueven "
             "durante el día dicen que se sienten más felices y concentrados en el trabajo."},
      {"es", "Nuestra empresa fue fundada hace veinte años por tres amigos que querían crear mejores herramientas "
             "para los pequeños negocios. Hoy tenemos oficinas en cuatro países, pero seguimos creyendo que escuchar "
             "a nuestros clientes es lo más importante que hacemos."},
      {"es", "Si está planeando un viaje a la costa este verano, recuerde reservar su habitación con tiempo porque "
             "los hoteles se llenan rápido. Las playas son preciosas, la comida es fresca y siempre hay algo que "
             "hacer por la noche, desde conciertos en el parque hasta mercados junto al puerto."},
      {"es", "La historia del puente se remonta a más de doscientos años. Fue construido con piedra de una cantera "
             "cercana, y durante mucho tiempo fue la única manera de cruzar el río. Aunque ha sido reparado muchas "
             "veces, la mayoría de los arcos originales siguen en pie."},
      {"es", "Abrió la carta despacio, con miedo de lo que pudiera decir. Su hermano no había escrito en meses, y "
             "las últimas noticias de la ciudad eran preocupantes. Pero la primera línea la hizo sonreír: volvía a "
             "casa para las fiestas y traería a su nueva esposa."},
      {"es", "Aprender un idioma nuevo requiere tiempo y paciencia. Ayuda escuchar música, ver películas y hablar "
             "con hablantes nativos siempre que se pueda. No se preocupe por cometer errores, porque cada error es "
             "una oportunidad para aprender algo que va a recordar."},
      {"es", "El ayuntamiento se reunirá el jueves para hablar del nuevo plan para el centro de la ciudad, que "
             "cerraría varias calles a los coches y daría más espacio a las tiendas, los cafés y las bicicletas. "
             "Los vecinos que quieran opinar deben escribir antes del final de la semana."},
      {"es", "Hornee el pan durante unos cuarenta minutos, hasta que la corteza esté dorada y la hogaza suene hueca "
             "al golpear la base. Déjelo enfriar sobre una rejilla antes de cortarlo, y guarde lo que sobre en una "
             "bolsa de papel para que se mantenga fresco durante varios días."},
  };
  return kSamples;
}

const std::vector<LabeledSample>& HeldOut() {
  static const std::vector<LabeledSample> kSamples = {
      {"en", "the quick brown fox jumps over the lazy dog"},
      {"en", "we are going to the market to buy some vegetables for dinner"},
      {"en", "please remember to close the window before you leave the house"},
      {"en", "the train was late again this morning because of the snow"},
      {"en", "my grandmother tells the best stories about her childhood on the farm"},
      {"en", "the museum will be closed next week while the new gallery is built"},
      {"en", "he spent the whole weekend painting the fence in the garden"},
      {"en", "there are many reasons why people decide to move to a new city"},
      {"en", "the results of the election will be announced later tonight"},
      {"en", "she would rather stay at home and read a good book than go out"},
      {"en", "the children were playing in the park until it started to rain"},
      {"en", "you should always check the weather before going into the mountains"},
      {"en", "this recipe needs two cups of flour and three large eggs"},
      {"en", "the old house at the end of the street has been empty for years"},
      {"en", "they have been working on this project since the beginning of the year"},
      {"fr", "le renard brun saute par-dessus le chien paresseux"},
      {"fr", "nous allons au marché pour acheter des légumes pour le dîner"},
      {"fr", "n'oubliez pas de fermer la fenêtre avant de quitter la maison"},
      {"fr", "le train était encore en retard ce matin à cause de la neige"},
      {"fr", "ma grand-mère raconte les plus belles histoires de son enfance à la ferme"},
      {"fr", "le musée sera fermé la semaine prochaine pendant la construction de la nouvelle galerie"},
      {"fr", "il a passé tout le week-end à peindre la clôture du jardin"},
      {"fr", "il y a beaucoup de raisons pour lesquelles les gens décident de déménager"},
      {"fr", "les résultats de l'élection seront annoncés plus tard ce soir"},
      {"fr", "elle préfère rester à la maison et lire un bon livre plutôt que de sortir"},
      {"fr", "les enfants jouaient dans le parc jusqu'à ce qu'il commence à pleuvoir"},
      {"fr", "il faut toujours vérifier la météo avant de partir en montagne"},
      {"fr", "cette recette demande deux tasses de farine et trois gros oeufs"},
      {"fr", "la vieille maison au bout de la rue est vide depuis des années"},
      {"fr", "ils travaillent sur ce projet depuis le début de l'année"},
      {"de", "der schnelle braune Fuchs springt über den faulen Hund"},
      {"de", "wir gehen auf den Markt, um Gemüse für das Abendessen zu kaufen"},
      {"de", "bitte denken Sie daran, das Fenster zu schließen, bevor Sie das Haus verlassen"},
      {"de", "der Zug hatte heute Morgen wegen des Schnees wieder Verspätung"},
      {"de", "meine Großmutter erzählt die schönsten Geschichten über ihre Kindheit auf dem Hof"},
      {"de", "das Museum ist nächste Woche geschlossen, während die neue Galerie gebaut wird"},
      {"de", "er hat das ganze Wochenende damit verbracht, den Zaun im Garten zu streichen"},
      {"de", "es gibt viele Gründe, warum Menschen beschließen, in eine neue Stadt zu ziehen"},
      {"de", "die Ergebnisse der Wahl werden heute Abend bekannt gegeben"},
      {"de", "sie bleibt lieber zu Hause und liest ein gutes Buch, als auszugehen"},
      {"de", "die Kinder spielten im Park, bis es anfing zu regnen"},
      {"de", "man sollte immer das Wetter prüfen, bevor man in die Berge geht"},
      {"de", "für dieses Rezept braucht man zwei Tassen Mehl und drei große Eier"},
      {"de", "das alte Haus am Ende der Straße steht seit Jahren leer"},
      {"de", "sie arbeiten seit Anfang des Jahres an diesem Projekt"},
      {"es", "el rápido zorro marrón salta sobre el perro perezoso"},
      {"es", "vamos al mercado a comprar verduras para la cena"},
      {"es", "por favor recuerde cerrar la ventana antes de salir de casa"},
      {"es", "el tren volvió a llegar tarde esta mañana por culpa de la nieve"},
      {"es", "mi abuela cuenta las mejores historias sobre su infancia en la granja"},
      {"es", "el museo estará cerrado la próxima semana mientras construyen la nueva galería"},
      {"es", "pasó todo el fin de semana pintando la valla del jardín"},
      {"es", "hay muchas razones por las que la gente decide mudarse a una ciudad nueva"},
      {"es", "los resultados de las elecciones se anunciarán esta noche"},
      {"es", "ella prefiere quedarse en casa y leer un buen libro que salir"},
      {"es", "los niños jugaban en el parque hasta que empezó a llover"},
      {"es", "siempre hay que mirar el tiempo antes de ir a la montaña"},
      {"es", "esta receta necesita dos tazas de harina y tres huevos grandes"},
      {"es", "la casa vieja al final de la calle lleva años vacía"},
      {"es", "llevan trabajando en este proyecto desde principios de año"},
  };
  return kSamples;
}

}  // namespace

std::span<const LabeledSample> BundledTrainingSamples() { return Training(); }
std::span<const LabeledSample> BundledHeldOutSamples() { return HeldOut(); }

}  // namespace refinery
