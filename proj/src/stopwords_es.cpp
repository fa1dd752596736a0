#include "mediasim/corpus.hpp"

namespace mediasim {

const Stopwords& default_spanish_stopwords() {
  static const Stopwords words = {
      "a", "al", "algo", "algunas", "algunos", "ante", "antes", "como", "con", "contra",
      "cual", "cuando", "de", "del", "desde", "donde", "durante", "e", "el", "él",
      "ella", "ellas", "ellos", "en", "entre", "era", "erais", "eran", "eras", "eres",
      "es", "esa", "esas", "ese", "eso", "esos", "esta", "está", "estaba", "estaban",
      "estamos", "estar", "estas", "estás", "este", "esto", "estos", "estoy", "estuvo",
      "fue", "fueron", "fui", "ha", "había", "habían", "han", "has", "hasta", "hay",
      "haya", "he", "hemos", "la", "las", "le", "les", "lo", "los", "más",
      "me", "mi", "mí", "mis", "mucho", "muchos", "muy", "nada", "ni", "no",
      "nos", "nosotros", "nuestra", "nuestras", "nuestro", "nuestros", "o", "os", "otra", "otras",
      "otro", "otros", "para", "pero", "poco", "por", "porque", "que", "qué", "quien",
      "quienes", "se", "sea", "sean", "ser", "si", "sí", "sido", "sin", "sobre",
      "sois", "somos", "son", "soy", "su", "sus", "suya", "suyas", "suyo", "suyos",
      "también", "tanto", "te", "tenemos", "tener", "tiene", "tienen", "todo", "todos", "tu",
      "tú", "tus", "tuyo", "un", "una", "uno", "unos", "vosotros", "y", "ya",
      "yo", "ser", "será", "serán", "sería", "tras", "cada", "aquí", "así", "les",
      "hoy", "ayer", "ahora", "aunque", "dos", "tres", "le", "sino", "según", "bajo"};
  return words;
}

}  // namespace mediasim
